/// Size caps shared by the exhaustive routines.
///
/// Every cap is enforced with an explicit error; nothing is silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest table order accepted by the quandle and group constructors.
    pub max_order: usize,
    /// Longest word a ball enumeration may produce.
    pub max_word_len: usize,
    /// Largest number of words a ball enumeration may produce.
    pub max_ball_size: usize,
}

impl Limits {
    pub const DEFAULT_MAX_ORDER: usize = 4096;
    pub const DEFAULT_MAX_WORD_LEN: usize = 64;
    pub const DEFAULT_MAX_BALL_SIZE: usize = 1 << 22;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: Self::DEFAULT_MAX_ORDER,
            max_word_len: Self::DEFAULT_MAX_WORD_LEN,
            max_ball_size: Self::DEFAULT_MAX_BALL_SIZE,
        }
    }
}
