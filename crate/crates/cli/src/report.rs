//! JSON shapes of every report. Integers that fit in `i64` are JSON
//! numbers, larger ones decimal strings; fractions are always `"a/b"`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use metadual_core::exact::{AbHom, FinGenAb, IntMatrix, QmodZ};
use metadual_core::metaplectic::{LeviCompatReport, MetaplecticDualDatum};
use metadual_core::quad_form::TorsionQuadForm;
use metadual_core::root_datum::{BasedRootDatum, DatumInvariants};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        i64::try_from(v).map_or_else(|_| Int::Big(v.to_string()), Int::Small)
    }
}

impl Int {
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Int::Small(v) => Some(BigInt::from(*v)),
            Int::Big(s) => s.parse().ok(),
        }
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().map(Int::from).collect()
}

pub fn matrix(m: &IntMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| ints(m.row(i))).collect()
}

/// Same shape as the `--group` object schema, so it can be fed back in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    pub rank: usize,
    pub simple_coroots: Vec<Vec<Int>>,
    pub simple_roots: Vec<Vec<Int>>,
}

impl From<&BasedRootDatum> for DatumJson {
    fn from(rd: &BasedRootDatum) -> Self {
        DatumJson {
            rank: rd.rank(),
            simple_coroots: matrix(rd.simple_coroots()),
            simple_roots: matrix(rd.simple_roots()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OffdiagJson {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

/// Same shape as the `--form` schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    #[serde(default)]
    pub diag: Vec<String>,
    #[serde(default)]
    pub offdiag: Vec<OffdiagJson>,
}

impl From<&TorsionQuadForm> for FormJson {
    fn from(q: &TorsionQuadForm) -> Self {
        FormJson {
            diag: q.diag().iter().map(QmodZ::to_string).collect(),
            offdiag: q
                .offdiag_entries()
                .into_iter()
                .map(|(i, j, v)| OffdiagJson {
                    i,
                    j,
                    value: v.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub description: String,
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl From<&FinGenAb> for GroupJson {
    fn from(g: &FinGenAb) -> Self {
        GroupJson {
            description: g.to_string(),
            free_rank: g.free_rank(),
            torsion: ints(g.torsion()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub source: GroupJson,
    pub modulus: Int,
    /// Values on the source's components, torsion first.
    pub values: Vec<Int>,
}

impl From<&AbHom> for HomJson {
    fn from(h: &AbHom) -> Self {
        HomJson {
            source: h.source().into(),
            modulus: h.modulus().into(),
            values: ints(h.values()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub rank: usize,
    pub semisimple_rank: usize,
    pub cartan_class: Vec<Vec<Int>>,
    pub pi1: GroupJson,
    pub dual_pi1: GroupJson,
    pub central_gluing: GroupJson,
    pub dual_central_gluing: GroupJson,
    /// Catalog name with the same invariant record, if any.
    pub matches: Option<String>,
}

impl InvariantsJson {
    pub fn new(inv: &DatumInvariants, matches: Option<String>) -> Self {
        InvariantsJson {
            rank: inv.rank,
            semisimple_rank: inv.semisimple_rank,
            cartan_class: matrix(&inv.cartan_class),
            pi1: (&inv.pi1).into(),
            dual_pi1: (&inv.dual_pi1).into(),
            central_gluing: (&inv.central_gluing).into(),
            dual_central_gluing: (&inv.dual_central_gluing).into(),
            matches,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub command: String,
    pub valid: bool,
    pub rank: usize,
    pub num_simple: usize,
    pub weyl_order: Option<u64>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    pub command: String,
    pub group: DatumJson,
    pub form: FormJson,
    /// Rows: basis of `Λ^♯` in coordinates of `Λ`.
    pub lambda_sharp: Vec<Vec<Int>>,
    pub orders: Vec<Int>,
    pub sharp_datum: DatumJson,
    pub h: DatumJson,
    pub h_invariants: InvariantsJson,
    pub pi1_sharp: GroupJson,
    pub epsilon: HomJson,
    pub epsilon_nontrivial: bool,
    pub gerbe_coefficients: Int,
    pub gerbe_class_slot: GroupJson,
    pub gerbe_label: Option<String>,
}

impl DualReport {
    pub fn new(rd: &BasedRootDatum, q: &TorsionQuadForm, d: &MetaplecticDualDatum, h_inv: InvariantsJson) -> Self {
        DualReport {
            command: "dual".into(),
            group: rd.into(),
            form: q.into(),
            lambda_sharp: matrix(&d.sharp.lambda_sharp),
            orders: ints(&d.sharp.orders),
            sharp_datum: (&d.sharp.sharp_datum).into(),
            h: (&d.h).into(),
            h_invariants: h_inv,
            pi1_sharp: (&d.pi1_sharp.group).into(),
            epsilon: (&d.epsilon).into(),
            epsilon_nontrivial: !d.epsilon.is_zero(),
            gerbe_coefficients: (&d.gerbe_coefficients).into(),
            gerbe_class_slot: (&d.gerbe_class_slot).into(),
            gerbe_label: d.gerbe_label.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatJson {
    pub radical_identical: bool,
    pub sharp_simple_data_match: bool,
    pub pi1_surjection: bool,
    pub pi1_map: Vec<Vec<Int>>,
    pub failures: Vec<String>,
}

impl From<&LeviCompatReport> for CompatJson {
    fn from(r: &LeviCompatReport) -> Self {
        CompatJson {
            radical_identical: r.radical_identical,
            sharp_simple_data_match: r.sharp_simple_data_match,
            pi1_surjection: r.pi1_surjection,
            pi1_map: r.pi1_map.iter().map(|v| ints(v)).collect(),
            failures: r.failures.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviReport {
    pub command: String,
    pub subset: Vec<usize>,
    pub levi: DatumJson,
    pub invariants: InvariantsJson,
    pub compat: Option<CompatJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub command: String,
    pub modulus: i64,
    pub genus: u32,
    pub pi0_order: Int,
    pub pi0_quad_count: Int,
    pub pi0_quad_group: GroupJson,
    pub pi0_gerbe_group: GroupJson,
    pub pi1_order: Int,
    pub pi1_group: GroupJson,
    pub pi2_order: Int,
    pub pi2_group: GroupJson,
    pub h3_group: GroupJson,
    pub divisibility_caveat: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub command: String,
    pub modulus: i64,
    pub count: usize,
    pub group_structure: GroupJson,
    pub forms: Vec<FormJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub command: String,
    /// Absent for the critical character of `π₁,alg(G)`.
    pub subset: Option<Vec<usize>>,
    /// `2ρ̌` or `2ρ̌_{G,M}`.
    pub two_rho: Vec<Int>,
    pub character: HomJson,
    pub nontrivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub class: String,
    pub exit_code: i32,
    pub message: String,
    pub witness: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorJson,
}
