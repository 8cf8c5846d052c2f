/// Resource limits shared by generation, enumeration and saturation search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Highest supertile level that may be generated (side length `3^max_level`).
    pub max_level: u32,
    /// Highest level the plateau search may compare against.
    pub saturation_level: u32,
    /// Upper bound, in bytes, on the payload held by one pattern set.
    pub memory_budget: u64,
}

pub const DEFAULT_MAX_LEVEL: u32 = 9;
pub const DEFAULT_SATURATION_LEVEL: u32 = 8;
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_level: DEFAULT_MAX_LEVEL,
            saturation_level: DEFAULT_SATURATION_LEVEL,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

impl Limits {
    /// Largest side length a generated grid may have.
    pub fn max_side(&self) -> usize {
        3usize.saturating_pow(self.max_level)
    }
}
