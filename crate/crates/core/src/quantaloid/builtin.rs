use std::fmt;
use std::str::FromStr;

use super::{DualizingFamily, Elem, HomLattice, Quantaloid};
use crate::error::{Error, Result};

/// Names of the bundled quantaloids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Boolean,
    Lukasiewicz(usize),
    RelLike(usize),
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "boolean" || s == "Q2" {
            return Ok(Builtin::Boolean);
        }
        let param = |prefix: &str| -> Option<Result<usize>> {
            let rest = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad parameter in `{s}`"))),
            )
        };
        if let Some(n) = param("lukasiewicz") {
            return Ok(Builtin::Lukasiewicz(n?));
        }
        if let Some(k) = param("rel_like") {
            return Ok(Builtin::RelLike(k?));
        }
        Err(Error::Parse(format!("unknown builtin quantaloid `{s}`")))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Boolean => write!(f, "boolean"),
            Builtin::Lukasiewicz(n) => write!(f, "lukasiewicz({n})"),
            Builtin::RelLike(k) => write!(f, "rel_like({k})"),
        }
    }
}

impl Builtin {
    pub fn build(self) -> Result<Quantaloid> {
        match self {
            Builtin::Boolean => Ok(boolean()),
            Builtin::Lukasiewicz(n) => lukasiewicz(n),
            Builtin::RelLike(k) => rel_like(k),
        }
    }
}

/// Builds a bundled quantaloid from its name, e.g. `lukasiewicz(4)`.
pub fn builtin_quantaloid(name: &str) -> Result<Quantaloid> {
    name.parse::<Builtin>()?.build()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn fraction(i: usize, d: usize) -> String {
    if i == 0 {
        return "0".into();
    }
    let g = gcd(i, d);
    if d / g == 1 {
        (i / g).to_string()
    } else {
        format!("{}/{}", i / g, d / g)
    }
}

/// One object `*`, the chain `0 < 1/(n-1) < … < 1` with truncated addition
/// `a∘b = max(0, a+b-1)`, unit `1` and dualizing element `0`.
pub fn lukasiewicz(n: usize) -> Result<Quantaloid> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "lukasiewicz needs at least 2 elements, got {n}"
        )));
    }
    if n > 4096 {
        return Err(Error::Precondition(format!("lukasiewicz({n}) is too large")));
    }
    let labels = (0..n).map(|i| fraction(i, n - 1)).collect();
    let lat = HomLattice::chain(labels)?;
    let mut table = Vec::with_capacity(n * n);
    for g in 0..n {
        for f in 0..n {
            table.push(Elem((g + f).saturating_sub(n - 1) as u16));
        }
    }
    let q = Quantaloid::from_parts(vec!["*".into()], vec![lat], vec![table], vec![Elem(n as u16 - 1)])?;
    q.with_dualizing(DualizingFamily::new(vec![Elem(0)]))
}

/// The two-element Boolean quantale: `∘ = ∧`, unit `1`, dualizing element `0`.
pub fn boolean() -> Quantaloid {
    lukasiewicz(2).expect("the two-element chain is a valid quantale")
}

/// `k` objects `A0 … A{k-1}`, every hom `{0 < 1}`, composition `∧`, units `1`.
pub fn rel_like(k: usize) -> Result<Quantaloid> {
    if k < 1 {
        return Err(Error::Precondition("rel_like needs at least one object".into()));
    }
    if k > 64 {
        return Err(Error::Precondition(format!("rel_like({k}) is too large")));
    }
    let two = HomLattice::chain(vec!["0".into(), "1".into()])?;
    let and = vec![Elem(0), Elem(0), Elem(0), Elem(1)];
    Quantaloid::from_parts(
        (0..k).map(|i| format!("A{i}")).collect(),
        vec![two; k * k],
        vec![and; k * k * k],
        vec![Elem(1); k],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::Obj;

    #[test]
    fn labels_are_reduced_fractions() {
        let l3 = lukasiewicz(3).unwrap();
        assert_eq!(l3.hom(Obj(0), Obj(0)).labels(), ["0", "1/2", "1"]);
        let l4 = lukasiewicz(4).unwrap();
        assert_eq!(l4.hom(Obj(0), Obj(0)).labels(), ["0", "1/3", "2/3", "1"]);
        let l5 = lukasiewicz(5).unwrap();
        assert_eq!(l5.hom(Obj(0), Obj(0)).labels(), ["0", "1/4", "1/2", "3/4", "1"]);
    }

    #[test]
    fn builtins_validate() {
        for name in ["boolean", "lukasiewicz(3)", "lukasiewicz(4)", "rel_like(1)", "rel_like(2)", "rel_like(3)"] {
            let q = builtin_quantaloid(name).unwrap();
            assert!(q.validate().is_empty(), "{name}: {}", q.validate());
        }
        let l3 = lukasiewicz(3).unwrap();
        assert!(l3.validate_dualizing_family(l3.dualizing().unwrap()).is_empty());
        assert!(rel_like(2).unwrap().dualizing().is_none());
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(lukasiewicz(1), Err(Error::Precondition(_))));
        assert!(matches!(rel_like(0), Err(Error::Precondition(_))));
        assert!(matches!(builtin_quantaloid("heyting"), Err(Error::Parse(_))));
        assert!(matches!(builtin_quantaloid("lukasiewicz(x)"), Err(Error::Parse(_))));
        assert_eq!("rel_like(2)".parse::<Builtin>().unwrap(), Builtin::RelLike(2));
        assert_eq!(Builtin::Lukasiewicz(4).to_string(), "lukasiewicz(4)");
    }

    #[test]
    fn lukasiewicz_composition_oracle() {
        // truncated addition on numerators over a common denominator
        for n in 2..7usize {
            let q = lukasiewicz(n).unwrap();
            let o = Obj(0);
            for a in 0..n {
                for b in 0..n {
                    let want = (a as i64 + b as i64 - (n as i64 - 1)).max(0) as u16;
                    assert_eq!(q.comp(o, o, o, Elem(a as u16), Elem(b as u16)), Elem(want));
                }
            }
        }
    }
}
