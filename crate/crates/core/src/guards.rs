//! Resource guards for the operations whose output can explode.

/// Configurable limits; the hard per-operation caps (universe size for model
/// enumeration, separator enumeration, cone decomposition) live as constants
/// next to their operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest universe accepted by the command-line front end.
    pub max_universe: usize,
    /// Cap on the number of minimal triangulations of one maximal prime
    /// component (or one closure graph).
    pub max_component_triangulations: usize,
    /// Cap on the product of the per-component counts, i.e. on the number of
    /// composed triangulations.
    pub max_triangulation_product: u64,
}

impl Default for Guards {
    fn default() -> Guards {
        Guards {
            max_universe: 10,
            max_component_triangulations: 10_000,
            max_triangulation_product: 1_000_000,
        }
    }
}
