//! Reference data from the worked examples: cocycle tables for the family `Λ_q`, the bracket
//! table among its named cocycles, and displayed homotopy liftings for both presets.

use crate::algebra::Path;
use crate::cohomology::{Cochain, CohomologyError};
use crate::lifting::{ClosedFormCandidate, HomotopyLifting, LiftingError};
use crate::resolution::{BimoduleElement, Decorated, Resolution};

/// Degree-2 cocycles of `Λ_q`, values on `ε²_0, …, ε²_3`.
pub const FAMILY_DEGREE_TWO: [&str; 9] = [
    "a,0,0,0",
    "ab,0,0,0",
    "0,0,a,0",
    "0,0,b,0",
    "0,0,ab,0",
    "0,0,e1,0",
    "0,ab,0,0",
    "0,0,0,c",
    "0,0,0,bc",
];

/// Degree-1 cocycles of `Λ_q`, values on `ε¹_0, ε¹_1, ε¹_2`.
pub const FAMILY_DEGREE_ONE: [&str; 6] = ["a,0,0", "ab,0,0", "0,b,0", "0,ab,0", "0,0,c", "0,0,bc"];

/// A named cocycle of the family at `q = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Named {
    Eta,
    Chi,
    EtaBar,
    ChiBar,
    Theta,
}

impl Named {
    pub const TABLE_ORDER: [Named; 4] = [Named::Eta, Named::Chi, Named::EtaBar, Named::ChiBar];

    pub fn degree(self) -> usize {
        match self {
            Named::Eta | Named::Chi => 1,
            Named::EtaBar | Named::ChiBar | Named::Theta => 2,
        }
    }

    pub fn values(self) -> &'static str {
        match self {
            Named::Eta => "a,0,0",
            Named::Chi => "ab,0,0",
            Named::EtaBar => "a,0,0,0",
            Named::ChiBar => "0,0,ab,0",
            Named::Theta => "ab,0,0,0",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Named::Eta => "η",
            Named::Chi => "χ",
            Named::EtaBar => "η̄",
            Named::ChiBar => "χ̄",
            Named::Theta => "θ",
        }
    }

    pub fn cochain(self, res: &Resolution) -> Result<Cochain, CohomologyError> {
        Cochain::parse(res, self.degree(), self.values())
    }
}

/// An entry `±X` or `0` of the bracket table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub sign: i64,
    pub value: Option<Named>,
}

impl TableEntry {
    const ZERO: TableEntry = TableEntry { sign: 1, value: None };

    const fn plus(value: Named) -> Self {
        TableEntry {
            sign: 1,
            value: Some(value),
        }
    }

    const fn minus(value: Named) -> Self {
        TableEntry {
            sign: -1,
            value: Some(value),
        }
    }

    /// The expected cochain in degree `degree`.
    pub fn cochain(self, res: &Resolution, degree: usize) -> Result<Cochain, CohomologyError> {
        match self.value {
            None => Ok(Cochain::zero(res, degree)),
            Some(named) => Ok(named.cochain(res)?.scaled(&res.field().int(self.sign))),
        }
    }

    pub fn label(self) -> String {
        match (self.sign, self.value) {
            (_, None) => "0".into(),
            (1, Some(v)) => v.label().into(),
            (_, Some(v)) => format!("−{}", v.label()),
        }
    }
}

/// `[row, column]` over [`Named::TABLE_ORDER`].
pub const BRACKET_TABLE: [[TableEntry; 4]; 4] = {
    use Named::*;
    let z = TableEntry::ZERO;
    [
        [z, z, TableEntry::minus(EtaBar), TableEntry::plus(ChiBar)],
        [z, z, TableEntry::minus(Theta), z],
        [TableEntry::plus(EtaBar), TableEntry::plus(Theta), z, z],
        [TableEntry::minus(ChiBar), z, z, z],
    ]
};

/// The worked slot value `[η̄, η](ε²_0) = 2a − a = a`.
pub const ETA_BAR_ETA_SLOT: (usize, &str) = (0, "a");

/// Cocycles of the short example `kQ/⟨x², xy+yx⟩` and `[χ, θ] = −χ`.
pub const SHORT_CHI: &str = "xy,0";
pub const SHORT_THETA: &str = "0,y";

/// One displayed image `ψ(ε^m_r) = Σ c · u ε_j v`, words in path notation, empty for the
/// generator's own endpoint.
pub type ImageTerms = &'static [(i64, &'static str, usize, &'static str)];

pub const SHORT_PSI_CHI: &[((usize, usize), ImageTerms)] = &[
    ((1, 0), &[(1, "x", 1, ""), (1, "", 0, "y")]),
    ((2, 0), &[(1, "x", 1, "")]),
    ((2, 1), &[(1, "", 1, "y")]),
];

pub const SHORT_PSI_THETA: &[((usize, usize), ImageTerms)] = &[((1, 1), &[(1, "", 1, "")]), ((2, 1), &[(1, "", 1, "")])];

pub const FAMILY_PSI_ETA_BAR: &[((usize, usize), ImageTerms)] = &[
    ((2, 0), &[(1, "", 0, "")]),
    ((3, 1), &[(1, "", 1, "")]),
    ((3, 4), &[(1, "", 3, "")]),
];

pub const FAMILY_PSI_CHI_BAR: &[((usize, usize), ImageTerms)] = &[
    ((2, 2), &[(1, "a", 1, ""), (1, "", 0, "b")]),
    ((3, 2), &[(-1, "a", 1, "")]),
    ((3, 3), &[(1, "", 1, "b")]),
];

fn build_image(res: &Resolution, degree: usize, terms: &[(i64, &str, usize, &str)]) -> Result<BimoduleElement, LiftingError> {
    let presentation = res.presentation();
    let mut x = BimoduleElement::zero(degree);
    for &(c, u, j, v) in terms {
        if j >= res.count(degree) {
            return Err(LiftingError::BadImage { degree, index: j });
        }
        let info = res.generator_info(degree, j);
        let word = |text: &str, vertex| -> Result<Path, LiftingError> {
            if text.is_empty() {
                Ok(Path::vertex(vertex))
            } else {
                presentation
                    .parse_path(text)
                    .map_err(|e| LiftingError::Cohomology(CohomologyError::Parse(e)))
            }
        };
        x.add_term(
            Decorated {
                left: word(u, info.origin)?,
                index: j,
                right: word(v, info.terminal)?,
            },
            res.field().int(c),
        );
    }
    Ok(x)
}

/// A displayed lifting as a [`HomotopyLifting`] through `max_degree`.
pub fn displayed_lifting(
    res: &Resolution,
    cocycle: Cochain,
    max_degree: usize,
    images: &[((usize, usize), ImageTerms)],
) -> Result<HomotopyLifting, LiftingError> {
    let n = cocycle.degree();
    let entries = images
        .iter()
        .filter(|((m, _), _)| *m <= max_degree)
        .map(|&((m, r), terms)| Ok(((m, r), build_image(res, m + 1 - n, terms)?)))
        .collect::<Result<Vec<_>, LiftingError>>()?;
    HomotopyLifting::from_images(res, cocycle, max_degree, entries)
}

/// `ψ_η(ε^n_r) = (n−r) ε^n_r` for `r ≤ n` and `(n−1) ε^n_{n+1}`, for `η = (a, 0, 0)`.
pub fn family_psi_eta(res: &Resolution, max_degree: usize) -> Result<HomotopyLifting, LiftingError> {
    let eta = Named::Eta.cochain(res)?;
    let mut entries = Vec::new();
    for n in 1..=max_degree {
        for r in 0..=n + 1 {
            let c = if r <= n { n as i64 - r as i64 } else { n as i64 - 1 };
            entries.push(((n, r), build_image(res, n, &[(c, "", r, "")])?));
        }
    }
    HomotopyLifting::from_images(res, eta, max_degree, entries)
}

/// `ψ_χ` for `χ = (ab, 0, 0)` at `q = 1`.
pub fn family_psi_chi(res: &Resolution, max_degree: usize) -> Result<HomotopyLifting, LiftingError> {
    let chi = Named::Chi.cochain(res)?;
    let mut entries = Vec::new();
    for n in 1..=max_degree {
        for r in 0..n {
            let mut terms = vec![((n - r) as i64, "", r, "b")];
            if r % 2 == 0 {
                terms.push((if n % 2 == 0 { -1 } else { 1 }, "a", r + 1, ""));
            }
            entries.push(((n, r), build_image(res, n, &terms)?));
        }
        let c = n as i64 - 1;
        entries.push(((n, n + 1), build_image(res, n, &[(c, "b", n + 1, ""), (c, "", 1, "c")])?));
    }
    HomotopyLifting::from_images(res, chi, max_degree, entries)
}

/// Closed-form scalars of the displayed `ψ_χ` in the short example: `b_{1,0}(1,1) =
/// b_{2,0}(2,1) = 1` on the `x`-side and `b_{1,0}(1,0) = b_{2,1}(2,1) = 1` on the `y`-side.
pub fn short_chi_closed_form(res: &Resolution) -> ClosedFormCandidate {
    let one = res.field().one();
    let quiver = res.presentation().quiver();
    ClosedFormCandidate::Length2 {
        first: quiver.arrow_by_name("x").expect("short preset arrow"),
        second: quiver.arrow_by_name("y").expect("short preset arrow"),
        left: [((1, 0, 1), one.clone()), ((2, 0, 1), one.clone())].into_iter().collect(),
        right: [((1, 0, 0), one.clone()), ((2, 1, 1), one)].into_iter().collect(),
    }
}
