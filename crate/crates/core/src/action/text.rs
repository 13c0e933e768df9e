//! Text form of elements, e.g.
//!
//! ```text
//! n=3 sigma=(2,3) t=[0,0,0] c={}
//! n=2 sigma=() t=[-1,1] c={(1,1)->(2,1)}
//! ```
//!
//! Sigma is written in cycle notation with fixed rays omitted; correction
//! entries appear in canonical `(ray, position)` order, so the form is stable
//! under a parse/print round trip.

use std::fmt;
use std::str::FromStr;

use super::element::{ElementError, HoughtonElement};
use super::point::RayPoint;

/// Parses cycle notation such as `(2,3)(4,5,6)` into an image vector of
/// length `ray_count`. `()` and the empty string denote the identity.
pub fn parse_cycles(ray_count: u32, text: &str) -> Result<Vec<u32>, ElementError> {
    let mut sigma: Vec<u32> = (1..=ray_count).collect();
    let mut seen = vec![false; ray_count as usize];
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body_end = rest
            .find(')')
            .filter(|_| rest.starts_with('('))
            .ok_or_else(|| ElementError::Parse(format!("malformed cycle list `{text}`")))?;
        let body = &rest[1..body_end];
        rest = &rest[body_end + 1..];
        if body.is_empty() {
            continue;
        }
        let cycle = body
            .split(',')
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|e| ElementError::Parse(format!("bad ray `{s}` in `{text}`: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for &r in &cycle {
            if r < 1 || r > ray_count || seen[r as usize - 1] {
                return Err(ElementError::NotAPermutation(ray_count));
            }
            seen[r as usize - 1] = true;
        }
        for (k, &r) in cycle.iter().enumerate() {
            sigma[r as usize - 1] = cycle[(k + 1) % cycle.len()];
        }
    }
    Ok(sigma)
}

/// Cycle notation for an image vector; fixed points are omitted.
pub fn format_cycles(sigma: &[u32]) -> String {
    let mut out = String::new();
    let mut visited = vec![false; sigma.len()];
    for start in 1..=sigma.len() as u32 {
        if visited[start as usize - 1] || sigma[start as usize - 1] == start {
            continue;
        }
        let mut cycle = vec![start];
        visited[start as usize - 1] = true;
        let mut next = sigma[start as usize - 1];
        while next != start {
            visited[next as usize - 1] = true;
            cycle.push(next);
            next = sigma[next as usize - 1];
        }
        let body: Vec<String> = cycle.iter().map(u32::to_string).collect();
        out.push('(');
        out.push_str(&body.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl fmt::Display for HoughtonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.translation().iter().map(i64::to_string).collect();
        let c: Vec<String> = self
            .correction()
            .iter()
            .map(|(p, q)| format!("{p}->{q}"))
            .collect();
        write!(
            f,
            "n={} sigma={} t=[{}] c={{{}}}",
            self.ray_count(),
            format_cycles(self.sigma()),
            t.join(","),
            c.join(",")
        )
    }
}

impl FromStr for HoughtonElement {
    type Err = ElementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |what: &str| ElementError::Parse(format!("{what} in `{s}`"));
        let mut n = None;
        let mut sigma_text = None;
        let mut t_text = None;
        let mut c_text = None;
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            match key {
                "n" => n = Some(value.parse::<u32>().map_err(|_| bad("bad ray count"))?),
                "sigma" => sigma_text = Some(value),
                "t" => t_text = Some(value),
                "c" => c_text = Some(value),
                _ => return Err(bad("unknown key")),
            }
        }
        let n = n.ok_or_else(|| bad("missing n"))?;
        let sigma = parse_cycles(n, sigma_text.unwrap_or("()"))?;
        let translation = match t_text {
            None => vec![0; n as usize],
            Some(t) => {
                let inner = t
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(|| bad("translation must be [..]"))?;
                inner
                    .split(',')
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<i64>().map_err(|_| bad("bad translation entry")))
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        let mut correction = Vec::new();
        if let Some(c) = c_text {
            let inner = c
                .strip_prefix('{')
                .and_then(|c| c.strip_suffix('}'))
                .ok_or_else(|| bad("correction must be {..}"))?;
            // entries look like (1,1)->(2,1) separated by commas between `)` and `(`
            for entry in inner.split("),(").filter(|e| !e.is_empty()) {
                let entry = entry.trim_start_matches('(').trim_end_matches(')');
                let (from, to) = entry
                    .split_once(")->(")
                    .ok_or_else(|| bad("correction entry must be (i,m)->(j,k)"))?;
                let from: RayPoint = from.parse().map_err(|e: String| bad(&e))?;
                let to: RayPoint = to.parse().map_err(|e: String| bad(&e))?;
                correction.push((from, to));
            }
        }
        HoughtonElement::new(n, sigma, translation, correction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycles_round_trip() {
        assert_eq!(parse_cycles(4, "(2,3)").unwrap(), vec![1, 3, 2, 4]);
        assert_eq!(parse_cycles(4, "(2,3,4)").unwrap(), vec![1, 3, 4, 2]);
        assert_eq!(parse_cycles(3, "()").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_cycles(3, "").unwrap(), vec![1, 2, 3]);
        assert_eq!(format_cycles(&[1, 3, 4, 2]), "(2,3,4)");
        assert_eq!(format_cycles(&[1, 2]), "()");
        assert!(parse_cycles(3, "(2,4)").is_err());
        assert!(parse_cycles(3, "(2,3)(3,2)").is_err());
        assert!(parse_cycles(3, "2,3").is_err());
    }

    #[test]
    fn generator_text_form() {
        let g1 = HoughtonElement::houghton_generator(1, 2).unwrap();
        assert_eq!(g1.to_string(), "n=2 sigma=() t=[-1,1] c={(1,1)->(2,1)}");
        let b = HoughtonElement::beta(2).unwrap();
        assert_eq!(
            b.to_string(),
            "n=2 sigma=() t=[0,0] c={(1,1)->(2,1),(2,1)->(1,1)}"
        );
        assert_eq!(b.to_string().parse::<HoughtonElement>().unwrap(), b);
        let a = HoughtonElement::alpha(&[1, 3, 2]).unwrap();
        assert_eq!(a.to_string(), "n=3 sigma=(2,3) t=[0,0,0] c={}");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("n=2 t=[1,1]".parse::<HoughtonElement>().is_err());
        assert!("sigma=()".parse::<HoughtonElement>().is_err());
        assert!("n=2 q=1".parse::<HoughtonElement>().is_err());
        assert!("n=2 c={(1,1)->}".parse::<HoughtonElement>().is_err());
    }

    fn arb_word() -> impl Strategy<Value = Vec<(u8, bool)>> {
        prop::collection::vec((0u8..4, any::<bool>()), 0..=6)
    }

    proptest! {
        #[test]
        fn text_round_trip_is_stable(word in arb_word()) {
            let gens = [
                HoughtonElement::houghton_generator(1, 3).unwrap(),
                HoughtonElement::houghton_generator(2, 3).unwrap(),
                HoughtonElement::beta(3).unwrap(),
                HoughtonElement::alpha(&[1, 3, 2]).unwrap(),
            ];
            let mut e = HoughtonElement::identity(3).unwrap();
            for (g, inv) in word {
                let s = if inv { gens[g as usize].invert() } else { gens[g as usize].clone() };
                e = s.compose(&e).unwrap();
            }
            let text = e.to_string();
            let back: HoughtonElement = text.parse().unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
