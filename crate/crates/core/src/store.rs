//! Versioned JSON files for Lagrangians and sextics, with content hashes.
//!
//! The hash is the SHA-256 of a canonical text form: the field descriptor
//! followed by the echelon basis (Lagrangians) or the sorted term list
//! (sextics). Provenance never enters the hash, so the same subspace built in
//! two ways hashes equally.
//!
//! Scalars are JSON integers over `F_p` and decimal strings `"n/d"` over `Q`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::epw::{EpwSextic, SexticProvenance};
use crate::error::{EpwError, Result};
use crate::exterior::{indices_of, mask_of, slot_of, symplectic_form, KVector};
use crate::field::{Field, FieldDesc};
use crate::lagrangian::{Lagrangian, Provenance};
use crate::linalg::Subspace;
use crate::poly::{Exponent, MultiPoly, NVARS};

pub const FORMAT: &str = "epwforge/1";

pub fn scalar_to_json<F: Field>(f: &F, x: &F::El) -> Value {
    let s = f.format(x);
    if f.characteristic() != 0 {
        Value::from(s.parse::<u64>().expect("prime field elements format as integers"))
    } else {
        Value::from(s)
    }
}

pub fn scalar_from_json<F: Field>(f: &F, v: &Value) -> Result<F::El> {
    match v {
        Value::String(s) => f.parse(s),
        Value::Number(n) => f.parse(&n.to_string()),
        other => Err(EpwError::Parse(format!("expected a scalar, found {other}"))),
    }
}

/// One term of a multivector: 1-based sorted indices and a coefficient.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KTerm {
    pub idx: Vec<u8>,
    pub c: Value,
}

pub fn kvector_to_json<F: Field>(f: &F, w: &KVector<F::El>) -> Vec<KTerm> {
    w.terms(f)
        .map(|(m, c)| KTerm {
            idx: indices_of(m),
            c: scalar_to_json(f, c),
        })
        .collect()
}

/// Parses a term list of the given grade. Indices must be sorted, distinct
/// and in `1..=6`; repeated terms are summed.
pub fn kvector_from_json<F: Field>(f: &F, grade: usize, terms: &[KTerm]) -> Result<KVector<F::El>> {
    let mut coeffs = KVector::zero(f, grade).into_coeffs();
    for t in terms {
        if t.idx.len() != grade
            || t.idx.windows(2).any(|p| p[0] >= p[1])
            || t.idx.iter().any(|&i| !(1..=6).contains(&i))
        {
            return Err(EpwError::Parse(format!("bad index set {:?} for grade {grade}", t.idx)));
        }
        let c = scalar_from_json(f, &t.c)?;
        let slot = slot_of(mask_of(&t.idx));
        f.add_assign(&mut coeffs[slot], &c);
    }
    Ok(KVector::from_coeffs(grade, coeffs))
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn canonical_rows<F: Field>(f: &F, rows: &[Vec<F::El>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|x| f.format(x)).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Content hash of a Lagrangian: depends only on the subspace.
pub fn lagrangian_hash<F: Field>(a: &Lagrangian<F>) -> String {
    let f = a.field();
    digest(&format!("{FORMAT}|lagrangian|{}|{}", f.descriptor(), canonical_rows(f, a.space().basis())))
}

/// Content hash of a sextic: depends only on the normalized polynomial.
pub fn sextic_hash<F: Field>(s: &EpwSextic<F>) -> String {
    let f = s.field();
    let terms: Vec<String> = s
        .poly()
        .terms()
        .map(|(e, c)| format!("{}:{}", e.map(|x| x.to_string()).join(","), f.format(c)))
        .collect();
    digest(&format!("{FORMAT}|sextic|{}|{}", f.descriptor(), terms.join(";")))
}

#[derive(Serialize, Deserialize)]
struct LagrangianFile {
    format: String,
    kind: String,
    #[serde(flatten)]
    field: FieldDesc,
    content_hash: String,
    basis: Vec<Vec<Value>>,
    provenance: Provenance,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SexticTerm {
    pub exp: Exponent,
    pub c: Value,
}

#[derive(Serialize, Deserialize)]
struct SexticFile {
    format: String,
    kind: String,
    #[serde(flatten)]
    field: FieldDesc,
    degree: u32,
    vars: usize,
    content_hash: String,
    terms: Vec<SexticTerm>,
    provenance: SexticProvenance,
}

/// Header fields shared by every file, read before the payload.
#[derive(Deserialize)]
struct Header {
    format: Option<String>,
    kind: Option<String>,
    #[serde(flatten)]
    field: Option<FieldDesc>,
}

fn check_header(v: &Value, kind: &str) -> Result<FieldDesc> {
    let h: Header = serde_json::from_value(v.clone()).map_err(|e| EpwError::Parse(format!("file header: {e}")))?;
    match h.format.as_deref() {
        Some(FORMAT) => {}
        Some(other) => return Err(EpwError::Version(format!("unsupported format {other:?}, expected {FORMAT:?}"))),
        None => return Err(EpwError::Version(format!("missing \"format\" tag, expected {FORMAT:?}"))),
    }
    if h.kind.as_deref() != Some(kind) {
        return Err(EpwError::Parse(format!("expected a {kind} file, found kind {:?}", h.kind)));
    }
    h.field.ok_or_else(|| EpwError::Parse("missing field descriptor".into()))
}

/// Field descriptor of a stored object, for dispatching on the field type.
pub fn peek_field(v: &Value) -> Result<FieldDesc> {
    let h: Header = serde_json::from_value(v.clone()).map_err(|e| EpwError::Parse(format!("file header: {e}")))?;
    h.field.ok_or_else(|| EpwError::Parse("missing field descriptor".into()))
}

fn require_field<F: Field>(f: &F, found: FieldDesc, what: &str) -> Result<()> {
    if f.descriptor() != found {
        return Err(EpwError::FieldMismatch(format!("{what} is over {found}, expected {}", f.descriptor())));
    }
    Ok(())
}

pub fn lagrangian_to_json<F: Field>(a: &Lagrangian<F>) -> Value {
    let f = a.field();
    let file = LagrangianFile {
        format: FORMAT.into(),
        kind: "lagrangian".into(),
        field: f.descriptor(),
        content_hash: lagrangian_hash(a),
        basis: a.space().basis().iter().map(|r| r.iter().map(|x| scalar_to_json(f, x)).collect()).collect(),
        provenance: a.provenance().clone(),
    };
    serde_json::to_value(file).expect("lagrangian serializes")
}

/// Parses and re-validates: version, field, isotropy (naming the first
/// non-orthogonal pair of stored rows), dimension and hash.
pub fn lagrangian_from_json<F: Field>(f: &F, v: &Value) -> Result<Lagrangian<F>> {
    let field = check_header(v, "lagrangian")?;
    require_field(f, field, "lagrangian")?;
    let file: LagrangianFile = serde_json::from_value(v.clone()).map_err(|e| EpwError::Parse(format!("lagrangian: {e}")))?;
    let rows: Vec<Vec<F::El>> = file
        .basis
        .iter()
        .map(|r| {
            if r.len() != 20 {
                return Err(EpwError::WrongDimension {
                    expected: 20,
                    found: r.len(),
                });
            }
            r.iter().map(|x| scalar_from_json(f, x)).collect()
        })
        .collect::<Result<_>>()?;
    let vecs: Vec<KVector<F::El>> = rows.iter().map(|r| KVector::from_coeffs(3, r.clone())).collect();
    for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            if !f.is_zero(&symplectic_form(f, &vecs[i], &vecs[j])) {
                return Err(EpwError::NotIsotropic(i, j));
            }
        }
    }
    let a = Lagrangian::new(Subspace::span(f, 20, rows), file.provenance)?;
    let actual = lagrangian_hash(&a);
    if actual != file.content_hash {
        return Err(EpwError::HashMismatch {
            expected: file.content_hash,
            actual,
        });
    }
    Ok(a)
}

pub fn sextic_to_json<F: Field>(s: &EpwSextic<F>) -> Value {
    let f = s.field();
    let file = SexticFile {
        format: FORMAT.into(),
        kind: "sextic".into(),
        field: f.descriptor(),
        degree: 6,
        vars: NVARS,
        content_hash: sextic_hash(s),
        terms: s
            .poly()
            .terms()
            .map(|(exp, c)| SexticTerm {
                exp,
                c: scalar_to_json(f, c),
            })
            .collect(),
        provenance: s.provenance().clone(),
    };
    serde_json::to_value(file).expect("sextic serializes")
}

pub fn sextic_from_json<F: Field>(f: &F, v: &Value) -> Result<EpwSextic<F>> {
    let field = check_header(v, "sextic")?;
    require_field(f, field, "sextic")?;
    let file: SexticFile = serde_json::from_value(v.clone()).map_err(|e| EpwError::Parse(format!("sextic: {e}")))?;
    if file.degree != 6 || file.vars != NVARS {
        return Err(EpwError::Invalid(format!("expected degree 6 in 6 variables, found {} in {}", file.degree, file.vars)));
    }
    let terms: Vec<(Exponent, F::El)> = file
        .terms
        .iter()
        .map(|t| Ok((t.exp, scalar_from_json(f, &t.c)?)))
        .collect::<Result<_>>()?;
    let s = EpwSextic::new(MultiPoly::from_terms(f, terms), file.provenance)?;
    let actual = sextic_hash(&s);
    if actual != file.content_hash {
        return Err(EpwError::HashMismatch {
            expected: file.content_hash,
            actual,
        });
    }
    Ok(s)
}

/// Deterministic pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| EpwError::Parse(format!("{}: {e}", path.display())))
}

/// Writes the file and returns its content hash.
pub fn save_lagrangian<F: Field>(a: &Lagrangian<F>, path: &Path) -> Result<String> {
    fs::write(path, to_pretty(&lagrangian_to_json(a)))?;
    Ok(lagrangian_hash(a))
}

pub fn load_lagrangian<F: Field>(f: &F, path: &Path) -> Result<Lagrangian<F>> {
    lagrangian_from_json(f, &read_json(path)?)
}

pub fn save_sextic<F: Field>(s: &EpwSextic<F>, path: &Path) -> Result<String> {
    fs::write(path, to_pretty(&sextic_to_json(s)))?;
    Ok(sextic_hash(s))
}

pub fn load_sextic<F: Field>(f: &F, path: &Path) -> Result<EpwSextic<F>> {
    sextic_from_json(f, &read_json(path)?)
}
