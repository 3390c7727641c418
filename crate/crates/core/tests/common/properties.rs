//! Seeded randomized checks on random homogeneous cocycles, shared by the property tests and
//! the acceptance run. `KOSZUL_GERST_SEED` fixes the sampling stream.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::OnceLock;

use koszul_core::bracket::{bracket, bracket_via_lifting, slot_formula};
use koszul_core::cohomology::{coboundary, cocycle_space, cup_product, same_class, Cochain};
use koszul_core::exactlinalg::Field;
use koszul_core::lifting::{solve_lifting, solve_lifting_perturbed};
use koszul_core::presets::{self, PresetName};
use koszul_core::resolution::Resolution;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

const DEFAULT_SEED: u64 = 0x6b6f_737a;

pub fn seed() -> u64 {
    std::env::var("KOSZUL_GERST_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed().to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

/// An algebra with bases of homogeneous cocycles in degrees 1 and 2, internal degrees 0..=2.
pub struct Sample {
    pub name: String,
    pub res: Resolution,
    bases: BTreeMap<(usize, usize), Vec<Cochain>>,
}

impl Sample {
    fn new(name: String, name_kind: PresetName, field: Field, q: Option<i64>) -> Self {
        let q = q.map(|q| field.int(q));
        let (rs, data) = presets::load(name_kind, field, q.as_ref(), 5).expect("preset loads");
        let res = Resolution::new(rs, data);
        let mut bases = BTreeMap::new();
        for n in 1..=2 {
            for len in 0..=2 {
                let space = cocycle_space(&res, n, Some(len)).expect("finite slice");
                bases.insert((n, len), space.cocycles);
            }
        }
        Sample { name, res, bases }
    }

    /// `Σ c_k z_k` over the cocycle basis in degree `n` and internal degree `len`.
    pub fn cocycle(&self, n: usize, len: usize, coefficients: &[i64]) -> Cochain {
        let field = self.res.field();
        self.bases[&(n, len)]
            .iter()
            .zip(coefficients)
            .fold(Cochain::zero(&self.res, n), |acc, (z, &c)| acc.add(&z.scaled(&field.int(c))))
    }
}

pub fn samples() -> &'static [Sample] {
    static SAMPLES: OnceLock<Vec<Sample>> = OnceLock::new();
    SAMPLES.get_or_init(|| {
        let f5 = Field::prime(5).expect("odd prime");
        let mut out = vec![Sample::new("short/Q".into(), PresetName::Short, Field::Rationals, None)];
        for q in [1, -1, 2] {
            out.push(Sample::new(format!("family q={q}/Q"), PresetName::Family, Field::Rationals, Some(q)));
        }
        out.push(Sample::new("family q=1/F5".into(), PresetName::Family, f5, Some(1)));
        out
    })
}

#[derive(Clone, Debug)]
pub struct Case {
    pub sample: usize,
    pub degrees: (usize, usize),
    pub lengths: (usize, usize),
    pub left: Vec<i64>,
    pub right: Vec<i64>,
    pub seed: u64,
}

impl Case {
    pub fn sample(&self) -> &'static Sample {
        &samples()[self.sample]
    }

    pub fn cocycles(&self) -> (Cochain, Cochain) {
        let s = self.sample();
        (
            s.cocycle(self.degrees.0, self.lengths.0, &self.left),
            s.cocycle(self.degrees.1, self.lengths.1, &self.right),
        )
    }
}

pub fn cases(lengths: RangeInclusive<usize>) -> impl Strategy<Value = Case> {
    let coefficients = || proptest::collection::vec(-2i64..=2, 8);
    (
        0..samples().len(),
        (1usize..=2, 1usize..=2),
        (lengths.clone(), lengths),
        coefficients(),
        coefficients(),
        any::<u64>(),
    )
        .prop_map(|(sample, degrees, lengths, left, right, seed)| Case {
            sample,
            degrees,
            lengths,
            left,
            right,
            seed,
        })
}

fn fail(case: &Case, what: &str) -> TestCaseError {
    TestCaseError::fail(format!("{}: {what}", case.sample().name))
}

fn ok_or_fail<T, E: std::fmt::Debug>(case: &Case, r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| fail(case, &format!("{e:?}")))
}

/// Brackets computed from two unrelated choices of liftings agree up to coboundary.
pub fn lifting_choice_independence(case: &Case) -> Result<(), TestCaseError> {
    let res = &case.sample().res;
    let (eta, theta) = case.cocycles();
    let top = eta.degree() + theta.degree() - 1;
    let canonical = ok_or_fail(case, bracket(res, &eta, &theta))?;
    let psi_eta = ok_or_fail(case, solve_lifting_perturbed(res, &eta, top, case.seed))?;
    let psi_theta = ok_or_fail(case, solve_lifting_perturbed(res, &theta, top, case.seed.wrapping_add(1)))?;
    let other = ok_or_fail(case, bracket_via_lifting(res, &eta, &theta, &psi_eta, &psi_theta))?;
    if !ok_or_fail(case, same_class(res, &canonical, &other))? {
        return Err(fail(case, "bracket class depends on the liftings"));
    }
    Ok(())
}

/// `[η, θ] = −(−1)^{(n−1)(m−1)} [θ, η]` in cohomology.
pub fn graded_antisymmetry(case: &Case) -> Result<(), TestCaseError> {
    let res = &case.sample().res;
    let (eta, theta) = case.cocycles();
    let (n, m) = (eta.degree(), theta.degree());
    let forward = ok_or_fail(case, bracket(res, &eta, &theta))?;
    let backward = ok_or_fail(case, bracket(res, &theta, &eta))?;
    let expected = backward.scaled(&res.field().one().signed((n - 1) * (m - 1) + 1));
    if !ok_or_fail(case, same_class(res, &forward, &expected))? {
        return Err(fail(case, "antisymmetry fails"));
    }
    Ok(())
}

pub fn bracket_is_cocycle(case: &Case) -> Result<(), TestCaseError> {
    let res = &case.sample().res;
    let (eta, theta) = case.cocycles();
    let value = ok_or_fail(case, bracket(res, &eta, &theta))?;
    if !ok_or_fail(case, coboundary(res, &value))?.is_zero() {
        return Err(fail(case, "d*[η, θ] ≠ 0"));
    }
    Ok(())
}

/// `η ⌣ θ = (−1)^{nm} θ ⌣ η` in cohomology.
pub fn cup_graded_commutativity(case: &Case) -> Result<(), TestCaseError> {
    let res = &case.sample().res;
    let (eta, theta) = case.cocycles();
    let (n, m) = (eta.degree(), theta.degree());
    let forward = ok_or_fail(case, cup_product(res, &eta, &theta))?;
    let backward = ok_or_fail(case, cup_product(res, &theta, &eta))?.scaled(&res.field().one().signed(n * m));
    if !ok_or_fail(case, same_class(res, &forward, &backward))? {
        return Err(fail(case, "cup product is not graded commutative"));
    }
    Ok(())
}

/// Values of lengths `p` and `q` bracket into `kQ_{p+q−1}`.
pub fn path_length_containment(case: &Case) -> Result<(), TestCaseError> {
    let res = &case.sample().res;
    let (eta, theta) = case.cocycles();
    let value = ok_or_fail(case, bracket(res, &eta, &theta))?;
    let expected = case.lengths.0 + case.lengths.1 - 1;
    for v in value.values() {
        if !v.is_zero() && v.homogeneous_length() != Some(expected) {
            return Err(fail(case, &format!("value {v:?} is not in kQ_{expected}")));
        }
    }
    Ok(())
}

/// For arrow-valued cocycles the slotwise scalar formula equals the lifting bracket.
pub fn slot_formula_on_length_one(case: &Case) -> Result<(), TestCaseError> {
    let res = &case.sample().res;
    let (eta, theta) = case.cocycles();
    let top = eta.degree() + theta.degree() - 1;
    let psi_eta = ok_or_fail(case, solve_lifting(res, &eta, top))?;
    let psi_theta = ok_or_fail(case, solve_lifting(res, &theta, top))?;
    let slots = ok_or_fail(case, slot_formula(res, &eta, &theta, &psi_eta, &psi_theta))?;
    let value = ok_or_fail(case, bracket_via_lifting(res, &eta, &theta, &psi_eta, &psi_theta))?;
    for r in 0..res.count(top) {
        if slots.value(r) != value.value(r) {
            return Err(fail(case, &format!("slot {r} differs")));
        }
    }
    Ok(())
}

pub type Property = fn(&Case) -> Result<(), TestCaseError>;

/// Name, property and the internal degrees it samples.
pub const SUITES: [(&str, Property, RangeInclusive<usize>); 6] = [
    ("lifting-choice independence", lifting_choice_independence, 0..=2),
    ("graded antisymmetry", graded_antisymmetry, 0..=2),
    ("bracket of cocycles is a cocycle", bracket_is_cocycle, 0..=2),
    ("cup graded commutativity", cup_graded_commutativity, 0..=2),
    ("path-length containment", path_length_containment, 1..=2),
    ("slot formula on length-1 values", slot_formula_on_length_one, 1..=1),
];

pub fn run_suite(index: usize, cases: u32) -> Result<(), String> {
    let (_, property, lengths) = SUITES[index].clone();
    runner(cases)
        .run(&self::cases(lengths), |case| property(&case))
        .map_err(|e| match e {
            TestError::Fail(reason, case) => format!("{reason} for {case:?}"),
            TestError::Abort(reason) => format!("aborted: {reason}"),
        })
}
