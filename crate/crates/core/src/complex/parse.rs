use super::{ComplexError, SimplicialComplex};

/// Parses the facet-list format: one facet per line, vertex labels separated by whitespace,
/// `#` starts a comment, blank lines are ignored. Labels are arbitrary tokens; ids follow
/// first appearance.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ComplexError> {
    let mut facets: Vec<Vec<&str>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let mut sorted = tokens.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedLabel {
                line: lineno + 1,
                label: w[0].to_string(),
            });
        }
        facets.push(tokens);
    }
    if facets.is_empty() {
        return Err(ComplexError::Empty);
    }
    SimplicialComplex::from_labeled_facets(&facets)
}
