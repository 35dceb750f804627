//! Runtime limits.

/// Environment variable overriding [`Limits::max_cells`].
pub const MAX_CELLS_VAR: &str = "STABDIFF_MAX_CELLS";

/// Default bound on the total number of free generators of a resolution.
pub const DEFAULT_MAX_CELLS: u128 = 1_000_000;

/// Default top degree for cohomology computations.
pub const DEFAULT_MAX_DEGREE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_cells: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cells: DEFAULT_MAX_CELLS }
    }
}

impl Limits {
    /// Defaults, with [`MAX_CELLS_VAR`] applied when it parses.
    pub fn from_env() -> Self {
        let max_cells = std::env::var(MAX_CELLS_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_CELLS);
        Limits { max_cells }
    }

    pub fn check(&self, needed: u128) -> crate::Result<()> {
        if needed > self.max_cells {
            Err(crate::Error::Infeasible { needed, limit: self.max_cells })
        } else {
            Ok(())
        }
    }
}
