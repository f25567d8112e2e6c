use std::fmt;

use super::AlgebraError;

/// A permutation of `{0, .., degree - 1}` stored as its image list.
///
/// Products are read left to right: `p.then(q)` sends `x` to `q(p(x))`,
/// the convention of the usual cycle-notation tables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting anything that is
    /// not a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Perm, AlgebraError> {
        let n = images.len();
        if n == 0 {
            return Err(AlgebraError::InvalidPermutation(
                "degree must be positive".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(AlgebraError::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(AlgebraError::InvalidPermutation(format!(
                    "image {x} appears twice"
                )));
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses disjoint-cycle notation such as `(0,7,11)(1,5,6)`.
    ///
    /// The empty string is the identity. Whitespace is ignored anywhere.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm, AlgebraError> {
        if degree == 0 {
            return Err(AlgebraError::InvalidPermutation(
                "degree must be positive".into(),
            ));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        // the display form of the identity
        if text.trim() == "()" {
            return Ok(Perm { images });
        }
        let mut used = vec![false; degree];
        let mut parser = CycleParser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        loop {
            parser.skip_ws();
            match parser.peek() {
                None => break,
                Some(b'(') => {
                    parser.pos += 1;
                }
                Some(_) => return Err(parser.error("expected '('")),
            }
            let mut cycle = Vec::new();
            loop {
                parser.skip_ws();
                let at = parser.pos;
                let point = parser.integer()?;
                if point >= degree {
                    return Err(AlgebraError::Parse {
                        position: at,
                        message: format!("point {point} out of range for degree {degree}"),
                    });
                }
                if std::mem::replace(&mut used[point], true) {
                    return Err(AlgebraError::Parse {
                        position: at,
                        message: format!("point {point} repeated"),
                    });
                }
                cycle.push(point);
                parser.skip_ws();
                match parser.peek() {
                    Some(b',') => parser.pos += 1,
                    Some(b')') => {
                        parser.pos += 1;
                        break;
                    }
                    _ => return Err(parser.error("expected ',' or ')'")),
                }
            }
            if cycle.len() < 2 {
                return Err(parser.error("a cycle needs at least two points"));
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Perm { images })
    }
}

struct CycleParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl CycleParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn integer(&mut self) -> Result<usize, AlgebraError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a point index"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| AlgebraError::Parse {
                position: start,
                message: "point index too large".into(),
            })
    }

    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_identity() {
        let p = Perm::parse_cycles("", 12).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 12);
    }

    #[test]
    fn transposition() {
        let p = Perm::parse_cycles("(0,1)", 3).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
    }

    #[test]
    fn whitespace_is_ignored() {
        let p = Perm::parse_cycles(" ( 0 , 7, 11 )\n(1,5,6) ", 12).unwrap();
        assert_eq!(p.apply(0), 7);
        assert_eq!(p.apply(11), 0);
        assert_eq!(p.apply(6), 1);
    }

    #[test]
    fn three_cycle_inverse() {
        let p = Perm::parse_cycles("(0,1,2)", 3).unwrap();
        assert_eq!(p.inverse(), Perm::parse_cycles("(0,2,1)", 3).unwrap());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse_cycles("(0,1)", 3).unwrap();
        let b = Perm::parse_cycles("(1,2)", 3).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
    }

    #[test]
    fn display_round_trips() {
        let text = "(0,7,11)(1,5,6)(2,9,10)(3,4,8)";
        let p = Perm::parse_cycles(text, 12).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(Perm::identity(4).to_string(), "()");
    }

    #[test]
    fn identity_display_parses_back() {
        let id = Perm::identity(5);
        assert_eq!(id.to_string(), "()");
        assert_eq!(Perm::parse_cycles("()", 5).unwrap(), id);
        assert!(Perm::parse_cycles("()(0,1)", 5).is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        match Perm::parse_cycles("(0,1)(1,2)", 3) {
            Err(AlgebraError::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Perm::parse_cycles("(0,5)", 3),
            Err(AlgebraError::Parse { position: 3, .. })
        ));
        assert!(Perm::parse_cycles("(0,1", 3).is_err());
        assert!(Perm::parse_cycles("0,1)", 3).is_err());
        assert!(Perm::parse_cycles("(0)", 3).is_err());
        assert!(Perm::parse_cycles("(0,,1)", 3).is_err());
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
        assert!(Perm::from_images(vec![]).is_err());
        assert!(Perm::from_images(vec![2, 0, 1]).is_ok());
    }
}
