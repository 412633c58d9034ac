//! Parameterized constructors for the reference algebras.
//!
//! The eight small entries `Ex2`..`Ex9` are algebras generated by two axes `a`
//! and `b`; `Uniform`, `Exceptional` and `K2` are families indexed by a finite
//! set of size `index_size`. Products of an axis with a joint eigenvector are
//! synthesized from the eigenvalue data, everything else is listed explicitly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::axis::{EigenvaluePair, JordanLabel};
use crate::linalg::{FieldError, FieldSpec, Scalar};

pub const MAX_INDEX_SIZE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Ex2,
    Ex3,
    Ex4,
    Ex5,
    Ex6,
    Ex7,
    Ex8,
    Ex9,
    Uniform,
    Exceptional,
    K2,
}

impl Entry {
    pub const ALL: [Entry; 11] = [
        Entry::Ex2,
        Entry::Ex3,
        Entry::Ex4,
        Entry::Ex5,
        Entry::Ex6,
        Entry::Ex7,
        Entry::Ex8,
        Entry::Ex9,
        Entry::Uniform,
        Entry::Exceptional,
        Entry::K2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Entry::Ex2 => "ex2",
            Entry::Ex3 => "ex3",
            Entry::Ex4 => "ex4",
            Entry::Ex5 => "ex5",
            Entry::Ex6 => "ex6",
            Entry::Ex7 => "ex7",
            Entry::Ex8 => "ex8",
            Entry::Ex9 => "ex9",
            Entry::Uniform => "uniform",
            Entry::Exceptional => "exceptional",
            Entry::K2 => "k2",
        }
    }

    pub fn is_family(&self) -> bool {
        matches!(self, Entry::Uniform | Entry::Exceptional | Entry::K2)
    }

    fn takes_pairs(&self) -> bool {
        matches!(
            self,
            Entry::Ex3 | Entry::Ex4 | Entry::Ex5 | Entry::Ex6 | Entry::Ex7 | Entry::Exceptional | Entry::K2
        )
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Entry {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Entry, CatalogError> {
        let e = match s.to_ascii_lowercase().as_str() {
            "ex2" | "ii" => Entry::Ex2,
            "ex3" | "iii" => Entry::Ex3,
            "ex4" | "iv" => Entry::Ex4,
            "ex5" | "v" => Entry::Ex5,
            "ex6" | "vi" => Entry::Ex6,
            "ex7" | "vii" => Entry::Ex7,
            "ex8" | "viii" => Entry::Ex8,
            "ex9" | "ix" => Entry::Ex9,
            "uniform" | "un1" => Entry::Uniform,
            "exceptional" | "exc1" => Entry::Exceptional,
            "k2" => Entry::K2,
            _ => return Err(CatalogError::UnknownEntry(s.to_string())),
        };
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("unknown parameter `{0}` for this entry")]
    UnknownParam(String),
    #[error("bad value `{value}` for parameter `{key}`")]
    BadParamValue { key: String, value: String },
    #[error("pair {0} must satisfy mu + nu = 1")]
    PairSumNotOne(EigenvaluePair),
    #[error("pair {0} uses an eigenvalue 0 or 1")]
    TrivialEigenvalue(EigenvaluePair),
    #[error("pair {0} is listed twice (after reduction into the field)")]
    DuplicatePair(EigenvaluePair),
    #[error("this entry requires the pair (1/2,1/2)")]
    MissingHalfPair,
    #[error("this entry requires at least one pair with mu != nu")]
    NoDaggerPair,
    #[error("scalar {0} must not be 0 or 1")]
    TrivialScalar(Scalar),
    #[error("mu and nu must differ")]
    EqualMuNu,
    #[error("index size {0} outside 1..={MAX_INDEX_SIZE}")]
    IndexSizeOutOfRange(usize),
    #[error("family index ({0},{1}) is out of range or on the diagonal")]
    FamilyIndexOutOfRange(usize, usize),
    #[error("family parameters at ({i},{j}) must satisfy mu_ij = mu_ji")]
    AsymmetricFamilyMu { i: usize, j: usize },
    #[error("a constant of this entry vanishes in characteristic {0}")]
    VanishingConstant(u64),
    #[error("the distinctness witness needs characteristic other than 3")]
    CharacteristicThree,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogParams {
    pub entry: Entry,
    pub field: FieldSpec,
    /// The `S°` data. `None` selects the entry default.
    pub pairs: Option<Vec<EigenvaluePair>>,
    pub mu: Option<Scalar>,
    pub nu: Option<Scalar>,
    pub index_size: usize,
    /// Overrides `(μ_{i,j}, ν_{i,j})` of the uniform family, 1-based ordered indices.
    pub family_params: BTreeMap<(usize, usize), (Scalar, Scalar)>,
}

impl CatalogParams {
    pub fn new(entry: Entry, field: FieldSpec) -> CatalogParams {
        CatalogParams {
            entry,
            field,
            pairs: None,
            mu: None,
            nu: None,
            index_size: 2,
            family_params: BTreeMap::new(),
        }
    }

    pub fn with_pairs(mut self, pairs: Vec<EigenvaluePair>) -> Self {
        self.pairs = Some(pairs);
        self
    }

    pub fn with_index_size(mut self, n: usize) -> Self {
        self.index_size = n;
        self
    }

    pub fn with_mu(mut self, mu: Scalar) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn with_nu(mut self, nu: Scalar) -> Self {
        self.nu = Some(nu);
        self
    }

    /// Applies one textual `key=value` setting. Keys: `field` (`rational` or
    /// `gf<p>`), `pairs` (`mu:nu,mu:nu,...`), `mu`, `nu`, `n`, and `mu_i_j` /
    /// `nu_i_j` for the uniform family. `field` must come first if present.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CatalogError> {
        let bad = || CatalogError::BadParamValue {
            key: key.to_string(),
            value: value.to_string(),
        };
        match key {
            "field" => {
                self.field = match value {
                    "rational" => FieldSpec::Rational,
                    v => {
                        let p: u64 = v.strip_prefix("gf").and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                        FieldSpec::prime(p)?
                    }
                };
            }
            "pairs" if self.entry.takes_pairs() => {
                let mut pairs = Vec::new();
                for item in value.split(',') {
                    let (m, n) = item.split_once(':').ok_or_else(bad)?;
                    pairs.push(EigenvaluePair::new(
                        self.field.parse_scalar(m)?,
                        self.field.parse_scalar(n)?,
                    ));
                }
                self.pairs = Some(pairs);
            }
            "mu" if matches!(self.entry, Entry::Ex8 | Entry::Ex9) => {
                self.mu = Some(self.field.parse_scalar(value)?);
            }
            "nu" if self.entry == Entry::Ex9 => {
                self.nu = Some(self.field.parse_scalar(value)?);
            }
            "n" if self.entry.is_family() => {
                self.index_size = value.parse().map_err(|_| bad())?;
            }
            _ if self.entry == Entry::Uniform && (key.starts_with("mu_") || key.starts_with("nu_")) => {
                let mut it = key[3..].split('_');
                let (Some(i), Some(j), None) = (it.next(), it.next(), it.next()) else {
                    return Err(CatalogError::UnknownParam(key.to_string()));
                };
                let i: usize = i.parse().map_err(|_| CatalogError::UnknownParam(key.to_string()))?;
                let j: usize = j.parse().map_err(|_| CatalogError::UnknownParam(key.to_string()))?;
                let x = self.field.parse_scalar(value)?;
                let one = self.field.one();
                // Each setting fixes both halves through mu + nu = 1.
                let pair = if key.starts_with("mu_") {
                    (x.clone(), &one - &x)
                } else {
                    (&one - &x, x)
                };
                self.family_params.insert((i, j), pair);
            }
            _ => return Err(CatalogError::UnknownParam(key.to_string())),
        }
        Ok(())
    }
}

/// An axis of a catalog algebra under a fixed name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedAxis {
    pub name: String,
    pub element: Element,
    /// The label the construction is documented to carry, if any.
    pub documented_label: Option<JordanLabel>,
    /// Axis that, together with this one, generates the algebra.
    pub partner: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub params: CatalogParams,
    pub algebra: Algebra,
    pub axes: Vec<NamedAxis>,
    /// Names of axes generating the algebra.
    pub generators: Vec<String>,
}

impl CatalogEntry {
    pub fn axis(&self, name: &str) -> Option<&Element> {
        self.axes.iter().find(|a| a.name == name).map(|a| &a.element)
    }

    pub fn named_axis(&self, name: &str) -> Option<&NamedAxis> {
        self.axes.iter().find(|a| a.name == name)
    }

    pub fn generator_elements(&self) -> Vec<Element> {
        self.generators
            .iter()
            .map(|g| self.axis(g).expect("generator is a named axis").clone())
            .collect()
    }
}

/// Dense product table filled by accumulation.
struct Table {
    field: FieldSpec,
    labels: Vec<String>,
    prods: Vec<Element>,
}

impl Table {
    fn new(field: FieldSpec, labels: Vec<String>) -> Table {
        let n = labels.len();
        Table {
            field,
            prods: vec![Element::zero(field, n); n * n],
            labels,
        }
    }

    fn n(&self) -> usize {
        self.labels.len()
    }

    /// `x_i · x_j += c · x_k`.
    fn add(&mut self, i: usize, j: usize, k: usize, c: &Scalar) {
        let n = self.n();
        let e = &self.prods[i * n + j];
        self.prods[i * n + j] = e.add_scaled(c, &Element::basis(self.field, n, k));
    }

    fn add_sym(&mut self, i: usize, j: usize, k: usize, c: &Scalar) {
        self.add(i, j, k, c);
        if i != j {
            self.add(j, i, k, c);
        }
    }

    /// Records that `v` is a joint `(μ,ν)` eigenvector of the axis `a`.
    fn eigen(&mut self, a: usize, v: usize, p: &EigenvaluePair) {
        self.add(a, v, v, &p.mu);
        self.add(v, a, v, &p.nu);
    }

    fn element(&self, terms: &[(usize, Scalar)]) -> Element {
        let mut e = Element::zero(self.field, self.n());
        for (k, c) in terms {
            e = e.add_scaled(c, &Element::basis(self.field, self.n(), *k));
        }
        e
    }

    fn finish(self) -> Result<Algebra, CatalogError> {
        let n = self.n();
        let mut rows = Vec::with_capacity(n);
        let mut it = self.prods.into_iter();
        for _ in 0..n {
            rows.push(it.by_ref().take(n).collect());
        }
        Ok(Algebra::new(self.field, self.labels, rows)?)
    }
}

fn pair_label(prefix: &str, p: &EigenvaluePair) -> String {
    format!("{prefix}{}_{}", p.mu.label_fragment(), p.nu.label_fragment())
}

fn q(f: FieldSpec, n: i64, d: i64) -> Scalar {
    f.ratio(n, d)
}

fn pair(f: FieldSpec, m: (i64, i64), n: (i64, i64)) -> EigenvaluePair {
    EigenvaluePair::new(q(f, m.0, m.1), q(f, n.0, n.1))
}

fn default_pairs(entry: Entry, f: FieldSpec) -> Vec<EigenvaluePair> {
    let dagger = pair(f, (-1, 1), (2, 1));
    let half = pair(f, (1, 2), (1, 2));
    match entry {
        Entry::Ex3 | Entry::Ex5 => vec![half, dagger],
        _ => vec![dagger],
    }
}

struct PairRules {
    sum_one: bool,
    need_half: bool,
    need_dagger: bool,
}

fn validate_pairs(pairs: &[EigenvaluePair], rules: PairRules, f: FieldSpec) -> Result<(), CatalogError> {
    let one = f.one();
    for (i, p) in pairs.iter().enumerate() {
        if [&p.mu, &p.nu].iter().any(|x| x.is_zero() || x.is_one()) {
            return Err(CatalogError::TrivialEigenvalue(p.clone()));
        }
        if rules.sum_one && &p.mu + &p.nu != one {
            return Err(CatalogError::PairSumNotOne(p.clone()));
        }
        if pairs[..i].contains(p) {
            return Err(CatalogError::DuplicatePair(p.clone()));
        }
    }
    if rules.need_half && !pairs.contains(&pair(f, (1, 2), (1, 2))) {
        return Err(CatalogError::MissingHalfPair);
    }
    if rules.need_dagger && pairs.iter().all(EigenvaluePair::is_commutative) {
        return Err(CatalogError::NoDaggerPair);
    }
    Ok(())
}

fn nontrivial(x: &Scalar) -> Result<(), CatalogError> {
    if x.is_zero() || x.is_one() {
        Err(CatalogError::TrivialScalar(x.clone()))
    } else {
        Ok(())
    }
}

fn two_axis_entry(
    params: &CatalogParams,
    t: Table,
    a: Element,
    b: Element,
    labels: (Option<JordanLabel>, Option<JordanLabel>),
) -> Result<CatalogEntry, CatalogError> {
    Ok(CatalogEntry {
        params: params.clone(),
        algebra: t.finish()?,
        axes: vec![
            NamedAxis {
                name: "a".into(),
                element: a,
                documented_label: labels.0,
                partner: Some("b".into()),
            },
            NamedAxis {
                name: "b".into(),
                element: b,
                documented_label: labels.1,
                partner: Some("a".into()),
            },
        ],
        generators: vec!["a".into(), "b".into()],
    })
}

/// Builds the presentation described by `params`.
pub fn build(params: &CatalogParams) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    if params.entry.is_family() && !(1..=MAX_INDEX_SIZE).contains(&params.index_size) {
        return Err(CatalogError::IndexSizeOutOfRange(params.index_size));
    }
    let pairs = params.pairs.clone().unwrap_or_else(|| default_pairs(params.entry, f));
    match params.entry {
        Entry::Ex2 => ex2(params),
        Entry::Ex3 => {
            validate_pairs(
                &pairs,
                PairRules {
                    sum_one: true,
                    need_half: true,
                    need_dagger: true,
                },
                f,
            )?;
            ex3(params, &pairs)
        }
        Entry::Ex4 => {
            validate_pairs(
                &pairs,
                PairRules {
                    sum_one: true,
                    need_half: false,
                    need_dagger: true,
                },
                f,
            )?;
            ex4(params, &pairs)
        }
        Entry::Ex5 => {
            validate_pairs(
                &pairs,
                PairRules {
                    sum_one: true,
                    need_half: false,
                    need_dagger: true,
                },
                f,
            )?;
            ex5(params, &pairs)
        }
        Entry::Ex6 => {
            validate_pairs(
                &pairs,
                PairRules {
                    sum_one: true,
                    need_half: false,
                    need_dagger: true,
                },
                f,
            )?;
            let two = pair(f, (2, 1), (2, 1));
            if pairs.contains(&two) {
                return Err(CatalogError::DuplicatePair(two));
            }
            ex6(params, &pairs)
        }
        Entry::Ex7 => {
            validate_pairs(
                &pairs,
                PairRules {
                    sum_one: true,
                    need_half: false,
                    need_dagger: false,
                },
                f,
            )?;
            ex7(params, &pairs)
        }
        Entry::Ex8 => ex8(params),
        Entry::Ex9 => ex9(params),
        Entry::Uniform => uniform(params),
        Entry::Exceptional => {
            validate_pairs(
                &pairs,
                PairRules {
                    sum_one: true,
                    need_half: false,
                    need_dagger: false,
                },
                f,
            )?;
            exceptional(params, &pairs)
        }
        Entry::K2 => {
            validate_pairs(
                &pairs,
                PairRules {
                    sum_one: true,
                    need_half: false,
                    need_dagger: true,
                },
                f,
            )?;
            let two = pair(f, (2, 1), (2, 1));
            if pairs.contains(&two) {
                return Err(CatalogError::DuplicatePair(two));
            }
            k2(params, &pairs)
        }
    }
}

fn ex2(params: &CatalogParams) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    // Labels are fixed: in characteristic 3 the two eigenvalues coincide.
    let labels = ["a", "b0", "b2_2", "b1d2_1d2"].map(String::from).to_vec();
    let (a, b0, b22, bh) = (0, 1, 2, 3);
    let mut t = Table::new(f, labels);
    t.add(a, a, a, &f.one());
    t.eigen(a, b22, &pair(f, (2, 1), (2, 1)));
    t.eigen(a, bh, &pair(f, (1, 2), (1, 2)));
    t.add(b0, b0, b0, &q(f, 3, 2));
    t.add_sym(b0, b22, b22, &q(f, -3, 2));
    t.add(b22, b22, b0, &q(f, -1, 2));
    let one = f.one();
    let ea = t.element(&[(a, one.clone())]);
    let eb = t.element(&[(a, one.clone()), (b0, one.clone()), (b22, one.clone()), (bh, one)]);
    two_axis_entry(params, t, ea, eb, (None, None))
}

fn ex3(params: &CatalogParams, pairs: &[EigenvaluePair]) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let mut labels = vec!["a".to_string(), "b0".to_string()];
    labels.extend(pairs.iter().map(|p| pair_label("b", p)));
    let mut t = Table::new(f, labels);
    t.add(0, 0, 0, &f.one());
    let half = pair(f, (1, 2), (1, 2));
    for (k, p) in pairs.iter().enumerate() {
        t.eigen(0, k + 2, p);
        if *p == half {
            t.add(k + 2, k + 2, 1, &f.one());
        }
    }
    let ea = t.element(&[(0, f.one())]);
    let eb = t.element(&(0..t.n()).map(|k| (k, f.one())).collect::<Vec<_>>());
    two_axis_entry(params, t, ea, eb, (None, None))
}

fn ex4(params: &CatalogParams, pairs: &[EigenvaluePair]) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let mut labels = vec!["a".to_string()];
    labels.extend(pairs.iter().map(|p| pair_label("b", p)));
    let mut t = Table::new(f, labels);
    t.add(0, 0, 0, &f.one());
    for (k, p) in pairs.iter().enumerate() {
        t.eigen(0, k + 1, p);
    }
    let ea = t.element(&[(0, f.one())]);
    let eb = t.element(&(0..t.n()).map(|k| (k, f.one())).collect::<Vec<_>>());
    two_axis_entry(params, t, ea, eb, (None, None))
}

fn ex5(params: &CatalogParams, pairs: &[EigenvaluePair]) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let mut labels = vec!["a".to_string(), "b0".to_string()];
    labels.extend(pairs.iter().map(|p| pair_label("b", p)));
    let mut t = Table::new(f, labels);
    t.add(0, 0, 0, &f.one());
    t.add(1, 1, 1, &f.one());
    for (k, p) in pairs.iter().enumerate() {
        t.eigen(0, k + 2, p);
        // b_{μ,ν} b0 = μ b_{μ,ν} and b0 b_{μ,ν} = ν b_{μ,ν}.
        t.add(k + 2, 1, k + 2, &p.mu);
        t.add(1, k + 2, k + 2, &p.nu);
    }
    let ea = t.element(&[(0, f.one())]);
    let eb = t.element(&(1..t.n()).map(|k| (k, f.one())).collect::<Vec<_>>());
    let half = pair(f, (1, 2), (1, 2));
    let label = if pairs.contains(&half) {
        JordanLabel::Eta(q(f, 1, 2))
    } else {
        JordanLabel::EmptySet
    };
    two_axis_entry(params, t, ea, eb, (Some(label.clone()), Some(label)))
}

fn ex6(params: &CatalogParams, pairs: &[EigenvaluePair]) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let mut labels = vec!["a".to_string(), "b0".to_string(), "b2_2".to_string()];
    labels.extend(pairs.iter().map(|p| pair_label("b", p)));
    let mut t = Table::new(f, labels);
    t.add(0, 0, 0, &f.one());
    t.eigen(0, 2, &pair(f, (2, 1), (2, 1)));
    t.add(1, 1, 1, &q(f, 3, 2));
    t.add_sym(1, 2, 2, &q(f, -3, 2));
    t.add(2, 2, 1, &q(f, -1, 2));
    for (k, p) in pairs.iter().enumerate() {
        t.eigen(0, k + 3, p);
    }
    let ea = t.element(&[(0, f.one())]);
    let eb = t.element(&(0..t.n()).map(|k| (k, f.one())).collect::<Vec<_>>());
    let two = JordanLabel::Eta(f.from_i64(2));
    two_axis_entry(params, t, ea, eb, (Some(two.clone()), Some(two)))
}

fn ex7(params: &CatalogParams, pairs: &[EigenvaluePair]) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let mut labels = vec!["a".to_string(), "b0".to_string()];
    labels.extend(pairs.iter().map(|p| pair_label("b", p)));
    let mut t = Table::new(f, labels);
    t.add(0, 0, 0, &f.one());
    t.add(1, 1, 1, &f.one());
    for (k, p) in pairs.iter().enumerate() {
        t.eigen(0, k + 2, p);
    }
    let ea = t.element(&[(0, f.one())]);
    let eb = t.element(&(0..t.n()).map(|k| (k, f.one())).collect::<Vec<_>>());
    two_axis_entry(params, t, ea, eb, (None, Some(JordanLabel::Eta(f.one()))))
}

fn ex8(params: &CatalogParams) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let mu = params.mu.clone().unwrap_or_else(|| f.from_i64(2));
    nontrivial(&mu)?;
    let p = EigenvaluePair::new(mu.clone(), mu.clone());
    let labels = vec!["a".to_string(), "b0".to_string(), pair_label("b", &p)];
    let mut t = Table::new(f, labels);
    let one = f.one();
    let four_mu = &f.from_i64(4) * &mu;
    t.add(0, 0, 0, &one);
    t.eigen(0, 2, &p);
    t.add(2, 2, 0, &(&one / &four_mu));
    t.add(1, 1, 1, &one);
    t.add(1, 1, 0, &(&(&mu - &one) / &four_mu));
    t.add_sym(1, 2, 2, &(&(&one - &mu) / &f.from_i64(2)));
    let ea = t.element(&[(0, one.clone())]);
    let eb = t.element(&[(0, q(f, 1, 2)), (1, one.clone()), (2, one.clone())]);
    two_axis_entry(params, t, ea, eb, (None, Some(JordanLabel::Eta(one))))
}

fn ex9(params: &CatalogParams) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let mu = params.mu.clone().unwrap_or_else(|| q(f, 1, 2));
    let nu = params.nu.clone().unwrap_or_else(|| f.from_i64(2));
    nontrivial(&mu)?;
    nontrivial(&nu)?;
    if mu == nu {
        return Err(CatalogError::EqualMuNu);
    }
    let pm = EigenvaluePair::new(mu.clone(), mu.clone());
    let pn = EigenvaluePair::new(nu.clone(), nu.clone());
    let labels = vec![
        "a".to_string(),
        "b0".to_string(),
        pair_label("b", &pm),
        pair_label("b", &pn),
    ];
    let (a, b0, bm, bn) = (0, 1, 2, 3);
    let mut t = Table::new(f, labels);
    let one = f.one();
    let two = f.from_i64(2);
    let four = f.from_i64(4);
    t.add(a, a, a, &one);
    t.eigen(a, bm, &pm);
    t.eigen(a, bn, &pn);
    t.add(b0, b0, b0, &q(f, 1, 2));
    t.add_sym(b0, bm, bm, &(&(&one - &mu) / &two));
    t.add_sym(b0, bn, bn, &(&(&one - &nu) / &two));
    // The two squares are pinned by b² = b with b = a/2 + b0 + b_μ + b_ν, which
    // gives a 2×2 system in the a- and b0-coordinates; this is its solution.
    let d = &mu - &nu;
    t.add(bm, bm, a, &(&(&(&one - &nu) / &four) / &d));
    t.add(bm, bm, b0, &(&(-&(&nu / &two)) / &d));
    t.add(bn, bn, a, &(&(&(&mu - &one) / &four) / &d));
    t.add(bn, bn, b0, &(&(&mu / &two) / &d));
    let ea = t.element(&[(a, one.clone())]);
    let eb = t.element(&[(a, q(f, 1, 2)), (b0, one.clone()), (bm, one.clone()), (bn, one)]);
    two_axis_entry(params, t, ea, eb, (None, Some(JordanLabel::ZeroOne)))
}

fn uniform(params: &CatalogParams) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let n = params.index_size;
    let one = f.one();
    let mut coeff = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                coeff.insert((i, j), (f.from_i64(2), f.from_i64(-1)));
            }
        }
    }
    for (&(i, j), v) in &params.family_params {
        if i == j || !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(CatalogError::FamilyIndexOutOfRange(i, j));
        }
        coeff.insert((i, j), v.clone());
    }
    for (&(i, j), (mu, nu)) in &coeff {
        let p = EigenvaluePair::new(mu.clone(), nu.clone());
        if mu.is_zero() || mu.is_one() || nu.is_zero() || nu.is_one() {
            return Err(CatalogError::TrivialEigenvalue(p));
        }
        if mu + nu != one {
            return Err(CatalogError::PairSumNotOne(p));
        }
        if i < j && coeff[&(j, i)].0 != *mu {
            return Err(CatalogError::AsymmetricFamilyMu { i, j });
        }
    }
    let labels = (1..=n).map(|i| format!("x{i}")).collect();
    let mut t = Table::new(f, labels);
    for i in 0..n {
        t.add(i, i, i, &one);
    }
    for (&(i, j), (mu, nu)) in &coeff {
        t.add(i - 1, j - 1, i - 1, nu);
        t.add(i - 1, j - 1, j - 1, mu);
    }
    let axes: Vec<NamedAxis> = (0..n)
        .map(|i| NamedAxis {
            name: format!("x{}", i + 1),
            element: t.element(&[(i, one.clone())]),
            documented_label: None,
            partner: None,
        })
        .collect();
    let generators = axes.iter().map(|a| a.name.clone()).collect();
    Ok(CatalogEntry {
        params: params.clone(),
        algebra: t.finish()?,
        axes,
        generators,
    })
}

fn exceptional(params: &CatalogParams, pairs: &[EigenvaluePair]) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let n = params.index_size;
    let s = pairs.len();
    let one = f.one();
    let x = |i: usize| i;
    let y = |j: usize| n + j;
    let z = |i: usize, j: usize, k: usize| 2 * n + (i * n + j) * s + k;
    let mut labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    labels.extend((1..=n).map(|j| format!("y{j}")));
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=s {
                labels.push(format!("z{i}_{j}_{k}"));
            }
        }
    }
    let mut t = Table::new(f, labels);
    for i in 0..n {
        t.add(x(i), x(i), x(i), &one);
        t.add(y(i), y(i), y(i), &one);
    }
    for i in 0..n {
        for j in 0..n {
            for (k, p) in pairs.iter().enumerate() {
                let zk = z(i, j, k);
                t.add(x(i), y(j), zk, &p.mu);
                t.add(y(j), x(i), zk, &p.nu);
                t.eigen(x(i), zk, p);
                // z y_j = μ z and y_j z = ν z: z is a (ν,μ) vector of y_j.
                t.eigen(y(j), zk, &p.transposed());
            }
        }
    }
    let mut axes = Vec::new();
    let eta0 = Some(JordanLabel::Eta(f.zero()));
    for i in 0..n {
        axes.push(NamedAxis {
            name: format!("x{}", i + 1),
            element: t.element(&[(x(i), one.clone())]),
            documented_label: eta0.clone(),
            partner: None,
        });
    }
    for j in 0..n {
        axes.push(NamedAxis {
            name: format!("y{}", j + 1),
            element: t.element(&[(y(j), one.clone())]),
            documented_label: eta0.clone(),
            partner: None,
        });
    }
    let generators = axes.iter().map(|a| a.name.clone()).collect();
    Ok(CatalogEntry {
        params: params.clone(),
        algebra: t.finish()?,
        axes,
        generators,
    })
}

fn k2(params: &CatalogParams, pairs: &[EigenvaluePair]) -> Result<CatalogEntry, CatalogError> {
    let f = params.field;
    let n = params.index_size;
    let s = pairs.len();
    let one = f.one();
    let block = 2 + s;
    let x = |i: usize| i;
    let base = |i: usize, j: usize| n + (i * n + j) * block;
    let mut labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    for i in 1..=n {
        for j in 1..=n {
            labels.push(format!("y{i}_{j}_0"));
            labels.push(format!("y{i}_{j}_2"));
            for k in 1..=s {
                labels.push(format!("z{i}_{j}_{k}"));
            }
        }
    }
    let mut t = Table::new(f, labels);
    for i in 0..n {
        t.add(x(i), x(i), x(i), &one);
    }
    let mut axes: Vec<NamedAxis> = (0..n)
        .map(|i| NamedAxis {
            name: format!("x{}", i + 1),
            element: t.element(&[(x(i), one.clone())]),
            documented_label: Some(JordanLabel::Eta(f.from_i64(2))),
            partner: None,
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            let b = base(i, j);
            let (y0, y2) = (b, b + 1);
            t.eigen(x(i), y2, &pair(f, (2, 1), (2, 1)));
            t.add(y0, y0, y0, &q(f, 3, 2));
            t.add_sym(y0, y2, y2, &q(f, -3, 2));
            t.add(y2, y2, y0, &q(f, -1, 2));
            for (k, p) in pairs.iter().enumerate() {
                t.eigen(x(i), b + 2 + k, p);
            }
            let mut terms = vec![(x(i), one.clone())];
            terms.extend((b..b + block).map(|k| (k, one.clone())));
            axes.push(NamedAxis {
                name: format!("y{}_{}", i + 1, j + 1),
                element: t.element(&terms),
                documented_label: Some(JordanLabel::Eta(f.from_i64(2))),
                partner: None,
            });
        }
    }
    let generators = axes.iter().map(|a| a.name.clone()).collect();
    Ok(CatalogEntry {
        params: params.clone(),
        algebra: t.finish()?,
        axes,
        generators,
    })
}

/// The two products that tell the square-zero and nonzero-half-square
/// entries apart: `b0·b_{1/2,1/2}` in each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctnessReport {
    pub field: FieldSpec,
    pub square_zero_product: Element,
    pub square_zero_rendered: String,
    pub other_product: Element,
    pub other_rendered: String,
    /// Coefficient of `b_{1/2,1/2}` in the second product.
    pub other_coefficient: Scalar,
    pub distinct: bool,
}

pub fn distinctness_demo(field: FieldSpec) -> Result<DistinctnessReport, CatalogError> {
    if field.characteristic() == 3 {
        return Err(CatalogError::CharacteristicThree);
    }
    let e2 = build(&CatalogParams::new(Entry::Ex2, field))?;
    let e9 = build(&CatalogParams::new(Entry::Ex9, field))?;
    let (a2, a9) = (&e2.algebra, &e9.algebra);
    // b_{1/2,1/2} sits at index 3 in the first entry and index 2 (the μ slot) in the second.
    let p2 = a2.mul(&a2.named("b0")?, &a2.basis_element(3));
    let bh = a9.basis_element(2);
    let p9 = a9.mul(&a9.named("b0")?, &bh);
    let coeff = p9.coords()[2].clone();
    Ok(DistinctnessReport {
        field,
        square_zero_rendered: a2.format_element(&p2),
        distinct: p2.is_zero() && !coeff.is_zero() && p9 == bh.scale(&coeff),
        square_zero_product: p2,
        other_rendered: a9.format_element(&p9),
        other_product: p9,
        other_coefficient: coeff,
    })
}
