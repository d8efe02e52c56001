//! The six-valued state/behavior alphabet.

use core::fmt;

/// Behavior class carried by an [`MCode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Behavior {
    Stable,
    Decrease,
    Growth,
    Chaotic,
}

impl Behavior {
    pub const ALL: [Behavior; 4] = [
        Behavior::Stable,
        Behavior::Decrease,
        Behavior::Growth,
        Behavior::Chaotic,
    ];

    /// Position in the (stability, decrease, growth, chaoticity) vector order.
    pub const fn slot(self) -> usize {
        match self {
            Behavior::Stable => 0,
            Behavior::Decrease => 1,
            Behavior::Growth => 2,
            Behavior::Chaotic => 3,
        }
    }
}

/// Next-state bit paired with a behavior label.
///
/// | code | state | behavior |
/// |------|-------|----------|
/// | 0    | 0     | stable   |
/// | 1    | 0     | decrease |
/// | 2    | 0     | chaotic  |
/// | 3    | 1     | chaotic  |
/// | 4    | 1     | growth   |
/// | 5    | 1     | stable   |
///
/// Decrease only occurs with state 0 and growth only with state 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MCode(u8);

impl MCode {
    pub const STABLE_0: MCode = MCode(0);
    pub const DECREASE: MCode = MCode(1);
    pub const CHAOTIC_0: MCode = MCode(2);
    pub const CHAOTIC_1: MCode = MCode(3);
    pub const GROWTH: MCode = MCode(4);
    pub const STABLE_1: MCode = MCode(5);

    pub const ALL: [MCode; 6] = [MCode(0), MCode(1), MCode(2), MCode(3), MCode(4), MCode(5)];

    pub const fn new(value: u8) -> Option<MCode> {
        if value <= 5 {
            Some(MCode(value))
        } else {
            None
        }
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn state(self) -> bool {
        self.0 >= 3
    }

    pub const fn behavior(self) -> Behavior {
        match self.0 {
            0 | 5 => Behavior::Stable,
            1 => Behavior::Decrease,
            2 | 3 => Behavior::Chaotic,
            _ => Behavior::Growth,
        }
    }

    /// The unique code with the given state and behavior, if that pairing exists.
    pub const fn from_parts(state: bool, behavior: Behavior) -> Option<MCode> {
        let v = match (state, behavior) {
            (false, Behavior::Stable) => 0,
            (false, Behavior::Decrease) => 1,
            (false, Behavior::Chaotic) => 2,
            (true, Behavior::Chaotic) => 3,
            (true, Behavior::Growth) => 4,
            (true, Behavior::Stable) => 5,
            _ => return None,
        };
        Some(MCode(v))
    }

    /// Leaf code for an input bit: 0 is stable-0, 1 is stable-1.
    pub const fn leaf(bit: bool) -> MCode {
        if bit {
            MCode::STABLE_1
        } else {
            MCode::STABLE_0
        }
    }
}

impl fmt::Display for MCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_behavior_coupling() {
        for m in MCode::ALL {
            assert_eq!(m.state(), m.value() >= 3);
            match m.behavior() {
                Behavior::Decrease => assert!(!m.state()),
                Behavior::Growth => assert!(m.state()),
                _ => {}
            }
            assert_eq!(MCode::from_parts(m.state(), m.behavior()), Some(m));
        }
        assert_eq!(MCode::from_parts(true, Behavior::Decrease), None);
        assert_eq!(MCode::from_parts(false, Behavior::Growth), None);
        assert_eq!(MCode::new(6), None);
    }

    #[test]
    fn behavior_classes() {
        let b: [Behavior; 6] = MCode::ALL.map(MCode::behavior);
        assert_eq!(
            b,
            [
                Behavior::Stable,
                Behavior::Decrease,
                Behavior::Chaotic,
                Behavior::Chaotic,
                Behavior::Growth,
                Behavior::Stable
            ]
        );
    }
}
