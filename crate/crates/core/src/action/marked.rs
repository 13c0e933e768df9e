use std::collections::HashSet;
use std::fmt;

use super::element::{ElementError, HoughtonElement};
use super::point::RayPoint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error("generator label `{0}` is used twice")]
    DuplicateLabel(String),
    #[error("generator label `{0}` must be non-empty and free of whitespace and `^`")]
    BadLabel(String),
    #[error("generator `{label}` acts on {got} rays, the action has {expected}")]
    RayCountMismatch {
        label: String,
        got: u32,
        expected: u32,
    },
    #[error("unknown generator `{0}` in word")]
    UnknownGenerator(String),
}

/// One letter of a word over the generators: generator index and sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A word read left to right, acting on the right: `x . (s t) = (x . s) . t`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Self(letters)
    }

    /// Cancels adjacent `s s^-1` pairs.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub element: HoughtonElement,
}

/// A finite generating set of bijections of `X_n`, with labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedAction {
    ray_count: u32,
    generators: Vec<Generator>,
    inverses: Vec<HoughtonElement>,
}

impl MarkedAction {
    pub fn new(ray_count: u32, generators: Vec<Generator>) -> Result<Self, ActionError> {
        if ray_count < 2 {
            return Err(ElementError::RayCount(ray_count).into());
        }
        let mut labels = HashSet::new();
        for g in &generators {
            if g.label.is_empty() || g.label.contains(char::is_whitespace) || g.label.contains('^')
            {
                return Err(ActionError::BadLabel(g.label.clone()));
            }
            if !labels.insert(g.label.as_str()) {
                return Err(ActionError::DuplicateLabel(g.label.clone()));
            }
            if g.element.ray_count() != ray_count {
                return Err(ActionError::RayCountMismatch {
                    label: g.label.clone(),
                    got: g.element.ray_count(),
                    expected: ray_count,
                });
            }
        }
        let inverses = generators.iter().map(|g| g.element.invert()).collect();
        Ok(Self {
            ray_count,
            generators,
            inverses,
        })
    }

    /// Houghton's generating set: `{g1, beta}` for `n = 2`, `{g1 .. g(n-1)}` otherwise.
    pub fn houghton(n: u32) -> Result<Self, ActionError> {
        let mut generators = Vec::new();
        for i in 1..n.max(2) {
            generators.push(Generator {
                label: format!("g{i}"),
                element: HoughtonElement::houghton_generator(i, n)?,
            });
        }
        if n == 2 {
            generators.push(Generator {
                label: "beta".into(),
                element: HoughtonElement::beta(2)?,
            });
        }
        Self::new(n, generators)
    }

    /// Houghton's generators plus the ray permutation `alpha`.
    pub fn houghton_extended(n: u32, sigma: &[u32]) -> Result<Self, ActionError> {
        let mut action = Self::houghton(n)?;
        let alpha = HoughtonElement::alpha(sigma)?;
        if alpha.ray_count() != n {
            return Err(ActionError::RayCountMismatch {
                label: "alpha".into(),
                got: alpha.ray_count(),
                expected: n,
            });
        }
        action.inverses.push(alpha.invert());
        action.generators.push(Generator {
            label: "alpha".into(),
            element: alpha,
        });
        Ok(action)
    }

    /// `g1` alone on `X_2`: its Schreier graph is a bi-infinite line.
    pub fn line() -> Result<Self, ActionError> {
        Self::new(
            2,
            vec![Generator {
                label: "g1".into(),
                element: HoughtonElement::houghton_generator(1, 2)?,
            }],
        )
    }

    /// No generators at all; every orbit is a single point.
    pub fn trivial(ray_count: u32) -> Result<Self, ActionError> {
        Self::new(ray_count, Vec::new())
    }

    pub fn ray_count(&self) -> u32 {
        self.ray_count
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    pub fn letter_element(&self, letter: Letter) -> &HoughtonElement {
        if letter.inverse {
            &self.inverses[letter.generator]
        } else {
            &self.generators[letter.generator].element
        }
    }

    pub fn act_letter(&self, p: RayPoint, letter: Letter) -> RayPoint {
        self.letter_element(letter).eval(p)
    }

    pub fn act(&self, p: RayPoint, word: &Word) -> RayPoint {
        word.letters().iter().fold(p, |q, &l| self.act_letter(q, l))
    }

    /// The element `e` with `e(x) = x . word`.
    pub fn word_element(&self, word: &Word) -> Result<HoughtonElement, ActionError> {
        let mut e = HoughtonElement::identity(self.ray_count)?;
        for &l in word.letters() {
            e = self.letter_element(l).compose(&e)?;
        }
        Ok(e)
    }

    /// Parses space-separated letters such as `g1 beta^-1 g2`; `id` or an
    /// empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, ActionError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "id" {
                continue;
            }
            let (label, inverse) = match token.strip_suffix("^-1") {
                Some(label) => (label, true),
                None => (token, false),
            };
            let generator = self
                .label_index(label)
                .ok_or_else(|| ActionError::UnknownGenerator(label.to_string()))?;
            letters.push(Letter { generator, inverse });
        }
        Ok(Word(letters))
    }

    pub fn format_word(&self, word: &Word) -> String {
        format_word_with(&self.labels(), word)
    }
}

pub fn format_word_with(labels: &[String], word: &Word) -> String {
    if word.is_empty() {
        return "id".to_string();
    }
    word.letters()
        .iter()
        .map(|l| {
            if l.inverse {
                format!("{}^-1", labels[l.generator])
            } else {
                labels[l.generator].clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("s{}^-1", l.generator)
                } else {
                    format!("s{}", l.generator)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn houghton_families() {
        let a2 = MarkedAction::houghton(2).unwrap();
        assert_eq!(a2.labels(), vec!["g1", "beta"]);
        let a4 = MarkedAction::houghton(4).unwrap();
        assert_eq!(a4.labels(), vec!["g1", "g2", "g3"]);
        let ext = MarkedAction::houghton_extended(3, &[1, 3, 2]).unwrap();
        assert_eq!(ext.labels(), vec!["g1", "g2", "alpha"]);
        assert!(MarkedAction::houghton(1).is_err());
        assert!(MarkedAction::houghton_extended(3, &[2, 1, 3]).is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let g = HoughtonElement::houghton_generator(1, 2).unwrap();
        let gens = vec![
            Generator {
                label: "a".into(),
                element: g.clone(),
            },
            Generator {
                label: "a".into(),
                element: g.clone(),
            },
        ];
        assert_eq!(
            MarkedAction::new(2, gens),
            Err(ActionError::DuplicateLabel("a".into()))
        );
        let bad = vec![Generator {
            label: "a b".into(),
            element: g,
        }];
        assert!(matches!(
            MarkedAction::new(2, bad),
            Err(ActionError::BadLabel(_))
        ));
    }

    #[test]
    fn words_act_on_the_right() {
        let a = MarkedAction::houghton(3).unwrap();
        let w = a.parse_word("g2 g1").unwrap();
        // (1,1) -g2-> (3,1) -g1-> (3,1)
        assert_eq!(a.act(RayPoint::new(1, 1), &w), RayPoint::new(3, 1));
        let e = a.word_element(&w).unwrap();
        assert_eq!(e.apply(RayPoint::new(1, 1)).unwrap(), RayPoint::new(3, 1));
        assert_eq!(a.format_word(&w), "g2 g1");
        let inv = a.parse_word("g1^-1 g2^-1").unwrap();
        assert_eq!(w.inverse(), inv);
        assert!(w.concat(&inv).reduced().is_empty());
        assert!(a.parse_word("g7").is_err());
        assert!(a.parse_word("id").unwrap().is_empty());
    }
}
