//! The registered checkers, how one probe is evaluated, and the serialized
//! form of its report.

use std::fmt;
use std::str::FromStr;

use horadam_core::identity::remark2_exponents;
use horadam_core::{
    check_eq5, CongruenceReport, CongruenceStatus, Error, IdentityReport, IndexTuple, Root,
    SeqSpec, Thm4Variant, Thm5Form, Verifier,
};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Checker {
    Eq5,
    Eq7,
    Thm2,
    Zhang47,
    Thm3,
    Remark2,
    Lemma2,
    Lemma3,
    Thm4,
    Thm4Special,
    Thm5S2,
    Thm5S3,
    Cor1,
    Cor2,
    Cor3,
}

/// Every checker, in grid order.
pub const CATALOG: [Checker; 15] = [
    Checker::Eq5,
    Checker::Eq7,
    Checker::Thm2,
    Checker::Zhang47,
    Checker::Thm3,
    Checker::Remark2,
    Checker::Lemma2,
    Checker::Lemma3,
    Checker::Thm4,
    Checker::Thm4Special,
    Checker::Thm5S2,
    Checker::Thm5S3,
    Checker::Cor1,
    Checker::Cor2,
    Checker::Cor3,
];

/// What a checker reads besides its indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Nothing: a statement about exponents only.
    Indices,
    /// `(a, b, c)` only; seeds are irrelevant.
    Params,
    /// A full sequence.
    Sequence,
}

impl Checker {
    pub fn name(self) -> &'static str {
        match self {
            Checker::Eq5 => "eq5",
            Checker::Eq7 => "eq7",
            Checker::Thm2 => "thm2",
            Checker::Zhang47 => "zhang47",
            Checker::Thm3 => "thm3",
            Checker::Remark2 => "remark2",
            Checker::Lemma2 => "lemma2",
            Checker::Lemma3 => "lemma3",
            Checker::Thm4 => "thm4",
            Checker::Thm4Special => "thm4-special",
            Checker::Thm5S2 => "thm5-s2",
            Checker::Thm5S3 => "thm5-s3",
            Checker::Cor1 => "cor1",
            Checker::Cor2 => "cor2",
            Checker::Cor3 => "cor3",
        }
    }

    pub fn scope(self) -> Scope {
        match self {
            Checker::Remark2 => Scope::Indices,
            Checker::Eq5 | Checker::Eq7 | Checker::Lemma3 => Scope::Params,
            _ => Scope::Sequence,
        }
    }

    /// Index names in argument order.
    pub fn index_names(self) -> &'static [&'static str] {
        match self {
            Checker::Eq5 | Checker::Thm4Special => &["n"],
            Checker::Eq7 | Checker::Thm2 | Checker::Zhang47 | Checker::Thm3 => &["m", "n", "r"],
            Checker::Cor1 | Checker::Cor2 => &["m", "n", "r"],
            Checker::Remark2 => &["m", "i", "r"],
            Checker::Lemma2 => &["n", "k"],
            Checker::Lemma3 => &["m", "r"],
            Checker::Thm4 => &["n", "m", "r"],
            Checker::Thm5S2 | Checker::Thm5S3 | Checker::Cor3 => &["n", "m", "r", "d"],
        }
    }

    /// Smallest value of each index that a sweep visits.
    pub fn index_floor(self) -> &'static [u64] {
        match self {
            Checker::Eq5 => &[1],
            Checker::Thm4Special => &[0],
            Checker::Eq7 | Checker::Thm2 | Checker::Zhang47 | Checker::Thm3 => &[2, 0, 0],
            Checker::Cor1 | Checker::Cor2 => &[1, 1, 1],
            Checker::Remark2 => &[0, 0, 0],
            Checker::Lemma2 => &[0, 1],
            Checker::Lemma3 => &[1, 1],
            Checker::Thm4 => &[1, 1, 1],
            Checker::Thm5S2 | Checker::Thm5S3 | Checker::Cor3 => &[1, 1, 1, 1],
        }
    }

    /// The variants a sweep runs at every index tuple.
    pub fn variants(self) -> &'static [Variant] {
        match self {
            Checker::Zhang47 => &[Variant::Corrected(true), Variant::Corrected(false)],
            Checker::Lemma3 => &[Variant::Root(Root::Alpha), Variant::Root(Root::Beta)],
            Checker::Thm4Special => &[
                Variant::Special(Thm4Variant::Direct),
                Variant::Special(Thm4Variant::ZhangForm),
            ],
            _ => &[Variant::Plain],
        }
    }
}

impl fmt::Display for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Checker {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CATALOG
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CATALOG.iter().map(|c| c.name()).collect();
                format!(
                    "unknown checker `{s}` (expected one of: {})",
                    names.join(", ")
                )
            })
    }
}

/// Selects among the forms a checker can take at one index tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    Root(Root),
    Special(Thm4Variant),
    Corrected(bool),
}

impl Variant {
    /// A negative control: unequal sides are the expected outcome.
    pub fn is_control(self) -> bool {
        self == Variant::Corrected(false)
    }

    /// `verify` flags that select this variant.
    pub fn flags(self) -> Option<String> {
        match self {
            Variant::Plain => None,
            Variant::Root(Root::Alpha) => Some("--root alpha".into()),
            Variant::Root(Root::Beta) => Some("--root beta".into()),
            Variant::Special(Thm4Variant::Direct) => Some("--variant direct".into()),
            Variant::Special(Thm4Variant::ZhangForm) => Some("--variant zhang".into()),
            Variant::Corrected(c) => Some(format!("--corrected={c}")),
        }
    }
}

/// One checker at one index tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub checker: Checker,
    /// Aligned with [`Checker::index_names`].
    pub index: Vec<u64>,
    pub variant: Variant,
}

impl Probe {
    pub fn new(checker: Checker, index: Vec<u64>, variant: Variant) -> Self {
        assert_eq!(
            index.len(),
            checker.index_names().len(),
            "index arity for {checker}"
        );
        Probe {
            checker,
            index,
            variant,
        }
    }

    /// Counting label; the negative control is tallied on its own row.
    pub fn label(&self) -> &'static str {
        if self.variant.is_control() {
            "zhang47-uncorrected"
        } else {
            self.checker.name()
        }
    }

    /// Runs the probe. `verifier` must be present unless the scope is
    /// [`Scope::Indices`]; for [`Scope::Params`] its seeds are ignored.
    pub fn run(&self, verifier: Option<&mut Verifier>) -> Result<CheckReport, Error> {
        let ix = |k: usize| self.index[k];
        if self.checker == Checker::Remark2 {
            let (lhs, rhs) = remark2_exponents(ix(0), ix(1), ix(2));
            let index = Index::of(self.checker, &self.index);
            return Ok(CheckReport {
                checker: self.checker.name(),
                name: "remark2",
                spec: None,
                index,
                result: CheckResult::Exponent {
                    lhs,
                    rhs,
                    equal: lhs == rhs,
                },
            });
        }
        let v = verifier.ok_or(Error::InvalidParams("checker needs a sequence"))?;
        let spec = SpecInfo::new(v.spec(), self.checker.scope());
        let identity = |r: IdentityReport| CheckReport::identity(self.checker, spec.clone(), r);
        let congruence =
            |r: CongruenceReport| CheckReport::congruence(self.checker, spec.clone(), r);
        Ok(match (self.checker, self.variant) {
            (Checker::Eq5, _) => identity(check_eq5(v.params(), ix(0))?),
            (Checker::Eq7, _) => identity(v.eq7(ix(0), ix(1), ix(2))?),
            (Checker::Thm2, _) => identity(v.thm2(ix(0), ix(1), ix(2))?),
            (Checker::Zhang47, Variant::Corrected(c)) => {
                identity(v.zhang47(ix(0), ix(1), ix(2), c)?)
            }
            (Checker::Thm3, _) => identity(v.thm3(ix(0), ix(1), ix(2))?),
            (Checker::Lemma2, _) => identity(v.lemma2(ix(0), ix(1))?),
            (Checker::Lemma3, Variant::Root(root)) => {
                CheckReport::identity(self.checker, spec.clone(), v.lemma3(ix(0), ix(1), root)?)
            }
            (Checker::Thm4, _) => identity(v.thm4(ix(0), ix(1), ix(2))?),
            (Checker::Thm4Special, Variant::Special(s)) => identity(v.thm4_special(ix(0), s)?),
            (Checker::Thm5S2, _) => identity(v.thm5(ix(0), ix(1), ix(2), ix(3), Thm5Form::S2)?),
            (Checker::Thm5S3, _) => identity(v.thm5(ix(0), ix(1), ix(2), ix(3), Thm5Form::S3)?),
            (Checker::Cor1, _) => congruence(v.cor1(ix(0), ix(1), ix(2))?),
            (Checker::Cor2, _) => congruence(v.cor2(ix(0), ix(1), ix(2))?),
            (Checker::Cor3, _) => congruence(v.cor3(ix(0), ix(1), ix(2), ix(3))?),
            (c, variant) => panic!("variant {variant:?} does not apply to {c}"),
        })
    }

    /// Arguments to `horadam` that reproduce this probe on `spec`.
    pub fn replay_args(&self, spec: Option<&SeqSpec>) -> Vec<String> {
        let mut out = vec!["verify".to_string(), self.checker.name().to_string()];
        if let Some(flags) = self.variant.flags() {
            out.extend(flags.split(' ').map(String::from));
        }
        if let Some(spec) = spec {
            let p = spec.params();
            for (flag, val) in [("-a", p.a()), ("-b", p.b()), ("-c", p.c())] {
                out.push(flag.into());
                out.push(val.to_string());
            }
            if self.checker.scope() == Scope::Sequence {
                match spec.family() {
                    horadam_core::Family::General => {
                        out.push(format!("--w0={}", spec.w0()));
                        out.push(format!("--w1={}", spec.w1()));
                    }
                    f => {
                        out.push("--family".into());
                        out.push(f.name().into());
                    }
                }
            }
        }
        for (name, val) in self.checker.index_names().iter().zip(&self.index) {
            out.push(format!("-{name}"));
            out.push(val.to_string());
        }
        out
    }

    pub fn replay_command(&self, spec: Option<&SeqSpec>) -> String {
        let mut cmd = String::from("horadam");
        for arg in self.replay_args(spec) {
            cmd.push(' ');
            cmd.push_str(&arg);
        }
        cmd
    }
}

/// Index tuple serialized as an ordered JSON object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Index(pub Vec<(&'static str, i64)>);

impl Index {
    /// Names `values` after the indices of `checker`.
    pub fn of(checker: Checker, values: &[u64]) -> Self {
        Index(
            checker
                .index_names()
                .iter()
                .zip(values)
                .map(|(k, v)| (*k, *v as i64))
                .collect(),
        )
    }
}

impl From<&IndexTuple> for Index {
    fn from(t: &IndexTuple) -> Self {
        Index(t.iter().collect())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecInfo {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w1: Option<String>,
}

impl SpecInfo {
    pub fn new(spec: &SeqSpec, scope: Scope) -> Self {
        let p = spec.params();
        let seq = scope == Scope::Sequence;
        SpecInfo {
            a: p.a(),
            b: p.b(),
            c: p.c(),
            family: seq.then(|| spec.family().name()),
            w0: seq.then(|| spec.w0().to_string()),
            w1: seq.then(|| spec.w1().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CheckResult {
    Identity {
        lhs: String,
        rhs: String,
        equal: bool,
        summands: Vec<String>,
    },
    Congruence {
        residual: String,
        modulus: String,
        status: &'static str,
    },
    Exponent {
        lhs: i64,
        rhs: i64,
        equal: bool,
    },
}

/// Serialized outcome of one probe. Exact values are strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checker: &'static str,
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecInfo>,
    pub index: Index,
    #[serde(flatten)]
    pub result: CheckResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Unequal,
    Holds,
    Fails,
    Inapplicable,
}

impl Verdict {
    /// Whether `verify` should exit successfully.
    pub fn passed(self) -> bool {
        !matches!(self, Verdict::Unequal | Verdict::Fails)
    }
}

impl CheckReport {
    fn identity<T: fmt::Display + PartialEq>(
        checker: Checker,
        spec: SpecInfo,
        r: IdentityReport<T>,
    ) -> Self {
        CheckReport {
            checker: checker.name(),
            name: r.name(),
            spec: Some(spec),
            index: r.index().into(),
            result: CheckResult::Identity {
                lhs: r.lhs().to_string(),
                rhs: r.rhs().to_string(),
                equal: r.equal(),
                summands: r.summands().iter().map(|s| s.to_string()).collect(),
            },
        }
    }

    fn congruence(checker: Checker, spec: SpecInfo, r: CongruenceReport) -> Self {
        CheckReport {
            checker: checker.name(),
            name: r.name(),
            spec: Some(spec),
            index: r.index().into(),
            result: CheckResult::Congruence {
                residual: r.residual().to_string(),
                modulus: r.modulus().to_string(),
                status: r.status().name(),
            },
        }
    }

    pub fn verdict(&self) -> Verdict {
        match &self.result {
            CheckResult::Identity { equal: true, .. }
            | CheckResult::Exponent { equal: true, .. } => Verdict::Equal,
            CheckResult::Identity { .. } | CheckResult::Exponent { .. } => Verdict::Unequal,
            CheckResult::Congruence { status, .. } => match *status {
                s if s == CongruenceStatus::Holds.name() => Verdict::Holds,
                s if s == CongruenceStatus::Fails.name() => Verdict::Fails,
                _ => Verdict::Inapplicable,
            },
        }
    }
}

/// Errors that only mean the probe lies outside a checker's domain.
pub fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParams(_) | Error::InvalidIndex(_) | Error::DegenerateModulus
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use horadam_core::Params;

    #[test]
    fn names_round_trip() {
        for c in CATALOG {
            assert_eq!(c.name().parse::<Checker>().unwrap(), c);
            assert_eq!(c.index_names().len(), c.index_floor().len());
        }
        assert!("zhang48".parse::<Checker>().is_err());
    }

    #[test]
    fn control_report_and_replay() {
        let spec = SeqSpec::u(Params::new(2, 1, 1).unwrap());
        let probe = Probe::new(Checker::Zhang47, vec![2, 2, 1], Variant::Corrected(false));
        let rep = probe.run(Some(&mut Verifier::new(spec.clone()))).unwrap();
        assert_eq!(rep.verdict(), Verdict::Unequal);
        assert_eq!(probe.label(), "zhang47-uncorrected");
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.starts_with(r#"{"checker":"zhang47","name":"zhang47-uncorrected","#));
        assert!(json.contains(
            r#""index":{"m":2,"n":2,"r":1},"kind":"identity","lhs":"418","rhs":"674","equal":false"#
        ));
        assert_eq!(
            probe.replay_command(Some(&spec)),
            "horadam verify zhang47 --corrected=false -a 2 -b 1 -c 1 --family u -m 2 -n 2 -r 1"
        );
    }

    #[test]
    fn params_scope_omits_seeds() {
        let spec = SeqSpec::general(Params::new(2, 1, 1).unwrap(), 3.into(), 7.into());
        let probe = Probe::new(Checker::Eq5, vec![3], Variant::Plain);
        let rep = probe.run(Some(&mut Verifier::new(spec.clone()))).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains(r#""spec":{"a":2,"b":1,"c":1},"#), "{json}");
        assert_eq!(
            probe.replay_command(Some(&spec)),
            "horadam verify eq5 -a 2 -b 1 -c 1 -n 3"
        );
    }

    #[test]
    fn congruence_verdict() {
        let spec = SeqSpec::u(Params::new(1, 1, 1).unwrap());
        let probe = Probe::new(Checker::Cor2, vec![2, 1, 1], Variant::Plain);
        let rep = probe.run(Some(&mut Verifier::new(spec))).unwrap();
        assert_eq!(rep.verdict(), Verdict::Holds);
        match rep.result {
            CheckResult::Congruence {
                residual, modulus, ..
            } => {
                assert_eq!((residual.as_str(), modulus.as_str()), ("6", "3"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn general_seeds_replay_with_equals_form() {
        let spec = SeqSpec::general(
            Params::new(-2, 3, 1).unwrap(),
            "-3/2".parse().unwrap(),
            7.into(),
        );
        let probe = Probe::new(Checker::Lemma3, vec![1, 2], Variant::Root(Root::Beta));
        assert_eq!(
            probe.replay_command(Some(&spec)),
            "horadam verify lemma3 --root beta -a -2 -b 3 -c 1 -m 1 -r 2"
        );
        let probe = Probe::new(Checker::Thm2, vec![2, 0, 1], Variant::Plain);
        assert_eq!(
            probe.replay_command(Some(&spec)),
            "horadam verify thm2 -a -2 -b 3 -c 1 --w0=-3/2 --w1=7 -m 2 -n 0 -r 1"
        );
    }
}
