//! Text descriptors for center objects: `W[mu=(2,2); rho=trivial]`,
//! `W[sigma=(1 2 3); rho=@file.json]`, `V[mu=(3)]`, `D[n=3]`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::center::{interpolation_object, regular_object, regular_sum, CenterObject};
use crate::error::{Error, Result};
use crate::link::{InvariantResult, LabelModel, LinkSpec};
use crate::oracle::CrossedModule;
use crate::perm::{CycleType, Permutation};
use crate::rho::{make_rho, RhoFile, RhoKind, RhoMap};
use crate::ring::CycPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhoSource {
    Builtin(RhoKind),
    /// A JSON table in the [`RhoFile`] format.
    File(PathBuf),
}

impl FromStr for RhoSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix('@') {
            if path.is_empty() {
                return Err(Error::Parse("rho=@ needs a file path".into()));
            }
            return Ok(RhoSource::File(PathBuf::from(path)));
        }
        match s {
            "trivial" | "triv" => Ok(RhoSource::Builtin(RhoKind::Trivial)),
            "sign" => Ok(RhoSource::Builtin(RhoKind::Sign)),
            _ => {
                let a = s
                    .strip_prefix("cyclic:")
                    .and_then(|a| a.trim().parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown rho {s:?}; use trivial, sign, cyclic:a or @file.json")))?;
                Ok(RhoSource::Builtin(RhoKind::CyclicPower(a)))
            }
        }
    }
}

impl fmt::Display for RhoSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoSource::Builtin(RhoKind::Trivial) => f.write_str("trivial"),
            RhoSource::Builtin(RhoKind::Sign) => f.write_str("sign"),
            RhoSource::Builtin(RhoKind::CyclicPower(a)) => write!(f, "cyclic:{a}"),
            RhoSource::Builtin(RhoKind::Explicit(_)) => f.write_str("explicit"),
            RhoSource::File(p) => write!(f, "@{}", p.display()),
        }
    }
}

/// Where σ comes from: the standard representative of a cycle type, or given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anchor {
    CycleType(CycleType),
    Sigma(Permutation),
}

impl Anchor {
    pub fn sigma(&self) -> Permutation {
        match self {
            Anchor::CycleType(mu) => mu.representative(),
            Anchor::Sigma(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectDescriptor {
    /// W_{σ,ρ}.
    Interpolation { anchor: Anchor, rho: RhoSource },
    /// V^μ.
    Regular(CycleType),
    /// D_n, the sum of all V^μ with μ ⊢ n.
    RegularSum(usize),
}

impl ObjectDescriptor {
    pub fn interpolation(mu: CycleType, rho: RhoKind) -> Self {
        ObjectDescriptor::Interpolation { anchor: Anchor::CycleType(mu), rho: RhoSource::Builtin(rho) }
    }

    /// n such that the object lives over [n] (V^μ and D_n over [n]⊗[n]).
    pub fn degree(&self) -> usize {
        match self {
            ObjectDescriptor::Interpolation { anchor, .. } => anchor.sigma().degree(),
            ObjectDescriptor::Regular(mu) => mu.size(),
            ObjectDescriptor::RegularSum(n) => *n,
        }
    }

    pub fn rho(&self) -> Result<Option<RhoMap>> {
        let ObjectDescriptor::Interpolation { anchor, rho } = self else { return Ok(None) };
        let sigma = anchor.sigma();
        let kind = match rho {
            RhoSource::Builtin(k) => k.clone(),
            RhoSource::File(path) => RhoKind::Explicit(RhoFile::load(path)?.table(sigma.degree())?),
        };
        make_rho(&kind, &sigma).map(Some)
    }

    pub fn label_model(&self) -> Result<LabelModel> {
        match self {
            ObjectDescriptor::Interpolation { .. } => Ok(LabelModel::interpolation(&self.rho()?.expect("interpolation"))),
            ObjectDescriptor::Regular(mu) => LabelModel::regular(mu),
            ObjectDescriptor::RegularSum(n) => LabelModel::regular_sum(*n),
        }
    }

    /// The object with explicit idempotent and half-braiding seed.
    pub fn center_object(&self) -> Result<CenterObject> {
        match self {
            ObjectDescriptor::Interpolation { .. } => interpolation_object(&self.rho()?.expect("interpolation")),
            ObjectDescriptor::Regular(mu) => regular_object(mu),
            ObjectDescriptor::RegularSum(n) => regular_sum(*n),
        }
    }

    pub fn dimension(&self) -> Result<CycPoly> {
        self.label_model()?.dimension()
    }

    pub fn invariant(&self, link: &LinkSpec, normalize: bool, max_states: u64) -> Result<InvariantResult> {
        let model = self.label_model()?;
        let raw = model.closure(&link.braid()?, max_states)?;
        InvariantResult::new(raw, model.dimension()?, self.to_string(), link, normalize)
    }

    /// The image at t = N as an explicit crossed S_N-module (W objects only).
    pub fn crossed_module(&self, big_n: usize) -> Result<CrossedModule> {
        match self.rho()? {
            Some(rho) => CrossedModule::induced(big_n, &rho),
            None => Err(Error::Provenance("an interpolation object W".into())),
        }
    }
}

impl FromStr for ObjectDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('[').ok_or_else(|| Error::Parse(format!("{s:?}: expected KIND[key=value; …]")))?;
        let body = s[open + 1..].strip_suffix(']').ok_or_else(|| Error::Parse(format!("{s:?}: missing closing ']'")))?;
        let mut fields = BTreeMap::new();
        for item in body.split(';').map(str::trim).filter(|i| !i.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("{item:?}: expected key=value")))?;
            if fields.insert(k.trim(), v.trim()).is_some() {
                return Err(Error::Parse(format!("{s:?}: key {:?} given twice", k.trim())));
            }
        }
        let kind = s[..open].trim();
        let allowed: &[&str] = match kind {
            "W" => &["mu", "sigma", "rho", "n"],
            "V" => &["mu"],
            "D" => &["n"],
            _ => return Err(Error::Parse(format!("unknown object kind {kind:?}; use W, V or D"))),
        };
        if let Some(k) = fields.keys().find(|k| !allowed.contains(k)) {
            return Err(Error::Parse(format!("{s:?}: unknown key {k:?}")));
        }
        let need = |k: &str| fields.get(k).copied().ok_or_else(|| Error::Parse(format!("{s:?}: missing {k}=")));
        let parse_n = |v: &str| v.parse::<usize>().map_err(|_| Error::Parse(format!("bad n={v:?}")));
        match kind {
            "W" => {
                let rho: RhoSource = fields.get("rho").copied().unwrap_or("trivial").parse()?;
                let anchor = match (fields.get("mu"), fields.get("sigma")) {
                    (Some(mu), None) => {
                        if fields.contains_key("n") {
                            return Err(Error::Parse("n= only accompanies sigma=".into()));
                        }
                        Anchor::CycleType(mu.parse()?)
                    }
                    (None, Some(sigma)) => {
                        let largest = sigma.split(|c: char| !c.is_ascii_digit()).filter_map(|d| d.parse::<usize>().ok()).max();
                        let n = match fields.get("n") {
                            Some(v) => parse_n(v)?,
                            None => largest.ok_or_else(|| Error::Parse(format!("{s:?}: give n= with sigma=()")))?,
                        };
                        Anchor::Sigma(Permutation::parse_cycles(sigma, n)?)
                    }
                    _ => return Err(Error::Parse(format!("{s:?}: give exactly one of mu= and sigma="))),
                };
                Ok(ObjectDescriptor::Interpolation { anchor, rho })
            }
            "V" => Ok(ObjectDescriptor::Regular(need("mu")?.parse()?)),
            _ => {
                let n = parse_n(need("n")?)?;
                if n == 0 {
                    return Err(Error::Parse("D[n=…] needs n ≥ 1".into()));
                }
                Ok(ObjectDescriptor::RegularSum(n))
            }
        }
    }
}

impl fmt::Display for ObjectDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectDescriptor::Interpolation { anchor: Anchor::CycleType(mu), rho } => write!(f, "W[mu={mu}; rho={rho}]"),
            ObjectDescriptor::Interpolation { anchor: Anchor::Sigma(s), rho } => {
                let largest = s.cycles().iter().filter(|c| c.len() > 1).flatten().map(|i| i + 1).max().unwrap_or(0);
                if largest == s.degree() {
                    write!(f, "W[sigma={s}; rho={rho}]")
                } else {
                    write!(f, "W[sigma={s}; n={}; rho={rho}]", s.degree())
                }
            }
            ObjectDescriptor::Regular(mu) => write!(f, "V[mu={mu}]"),
            ObjectDescriptor::RegularSum(n) => write!(f, "D[n={n}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ObjectDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn parses_the_documented_forms() {
        let w = parse("W[mu=(2,2); rho=trivial]");
        assert_eq!(w, ObjectDescriptor::interpolation(CycleType::new(vec![2, 2]).unwrap(), RhoKind::Trivial));
        assert_eq!(w.degree(), 4);
        assert_eq!(parse("V[mu=(3)]"), ObjectDescriptor::Regular(CycleType::new(vec![3]).unwrap()));
        assert_eq!(parse("D[n=3]"), ObjectDescriptor::RegularSum(3));
        let c = parse("W[mu=(3); rho=cyclic:1]");
        assert_eq!(c.rho().unwrap().unwrap().order(), 3);
        let s = parse("W[sigma=(1 2 3); rho=sign]");
        assert_eq!(s.degree(), 3);
        assert_eq!(parse("W[sigma=(1 2); n=3]").degree(), 3);
        assert_eq!(parse("W[sigma=(); n=2; rho=sign]").degree(), 2);
        assert_eq!(
            parse("W[sigma=(1 2 3); rho=@file.json]"),
            ObjectDescriptor::Interpolation {
                anchor: Anchor::Sigma(Permutation::parse_cycles("(1 2 3)", 3).unwrap()),
                rho: RhoSource::File("file.json".into())
            }
        );
    }

    #[test]
    fn display_roundtrips() {
        for s in [
            "W[mu=(2,2); rho=trivial]",
            "W[mu=(3); rho=cyclic:2]",
            "W[sigma=(1 3); rho=sign]",
            "W[sigma=(1 2); n=4; rho=trivial]",
            "W[sigma=(); n=2; rho=sign]",
            "W[sigma=(1 2 3); rho=@rho.json]",
            "V[mu=(2,1)]",
            "D[n=2]",
        ] {
            assert_eq!(parse(s).to_string(), s);
            assert_eq!(parse(&parse(s).to_string()), parse(s));
        }
    }

    #[test]
    fn rejects_malformed_descriptors() {
        for s in [
            "W(mu=(2))",
            "X[n=2]",
            "W[mu=(2); sigma=(1 2)]",
            "W[rho=sign]",
            "W[mu=(2); rho=bogus]",
            "W[mu=(2); mu=(2)]",
            "V[n=2]",
            "D[n=0]",
            "D[n=x]",
            "W[sigma=()]",
            "W[mu=(2); n=3]",
            "W[mu=(2); rho=@]",
        ] {
            assert!(s.parse::<ObjectDescriptor>().is_err(), "{s}");
        }
    }

    #[test]
    fn file_rho_loads() {
        let sigma = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        let rho = make_rho(&RhoKind::CyclicPower(1), &sigma).unwrap();
        let path = std::env::temp_dir().join(format!("deligne-rho-{}.json", std::process::id()));
        std::fs::write(&path, serde_json::to_string(&rho.to_file()).unwrap()).unwrap();
        let d: ObjectDescriptor = format!("W[sigma=(1 2 3); rho=@{}]", path.display()).parse().unwrap();
        assert_eq!(d.rho().unwrap().unwrap(), rho);
        std::fs::remove_file(&path).unwrap();
        let missing: ObjectDescriptor = "W[sigma=(1 2 3); rho=@/nonexistent/rho.json]".parse().unwrap();
        assert!(matches!(missing.rho(), Err(Error::Io(_))));
    }

    #[test]
    fn dimensions_by_kind() {
        let t = CycPoly::t();
        let f2 = &t * &(&t - &CycPoly::one());
        assert_eq!(parse("W[mu=(2); rho=trivial]").dimension().unwrap(), f2.scale_rational(&crate::ring::rational(1, 2)));
        assert_eq!(parse("W[mu=(1); rho=trivial]").dimension().unwrap(), t);
        assert_eq!(parse("V[mu=(2)]").dimension().unwrap(), (&f2 * &f2).scale_rational(&crate::ring::rational(1, 2)));
        assert_eq!(parse("D[n=2]").dimension().unwrap().eval_int(2), crate::ring::Cyclotomic::from_int(4));
    }
}
