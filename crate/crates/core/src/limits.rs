/// Resource caps shared by constructions and enumerations. Exceeding one
/// yields [`Error::Resource`](crate::Error::Resource) instead of a silently
/// partial answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring (in elements) that may be constructed.
    pub max_elements: usize,
    /// Largest number of distinct ideals kept during lattice enumeration.
    pub max_ideals: usize,
    /// Rings up to this size get materialized addition/multiplication tables.
    pub table_elements: usize,
    /// Rings up to this size have every ring axiom checked on all triples.
    pub exhaustive_axioms: usize,
    /// Budget for quadratic scans (element pairs) such as the radical.
    pub max_pairs: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 1 << 18,
            max_ideals: 20_000,
            table_elements: 1024,
            exhaustive_axioms: 64,
            max_pairs: 1 << 28,
        }
    }
}
