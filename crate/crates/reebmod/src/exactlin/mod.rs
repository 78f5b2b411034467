//! Exact linear algebra over `Z`, `Z/p` (p prime) and `Q`.
//!
//! Elements of the fiber-class module are finitely supported sums of
//! [`ManifoldClass`] generators with rational coefficients; operations that
//! run over `Z` or `Z/p` demand integral coefficients and say so when they
//! are violated. Quotient modules are presented through Smith normal form
//! (over `Z`) or row reduction (over fields), and every membership answer
//! carries a witness that has been re-verified by substitution.

pub mod matrix;
pub mod snf;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::symbols::{ManifoldClass, SymbolTable};
use crate::{Error, Result};

pub use matrix::IntMat;
pub use snf::{smith_normal_form, Smith};

/// Scalar type for element coefficients. Integral values are plain
/// rationals with denominator one.
pub type Coeff = BigRational;

pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficient ring for module computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientRing {
    Integers,
    IntegersMod(u64),
    Rationals,
}

impl CoefficientRing {
    /// Constructs `Z/p`, rejecting composite moduli.
    pub fn integers_mod(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CoefficientRing::IntegersMod(p))
    }

    /// Accepts `Z`, `Q`, or `Z<p>` such as `Z2`.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "Z" => Ok(CoefficientRing::Integers),
            "Q" => Ok(CoefficientRing::Rationals),
            _ => {
                let digits = text.strip_prefix('Z').unwrap_or("");
                match digits.parse::<u64>() {
                    Ok(p) => CoefficientRing::integers_mod(p),
                    Err(_) => Err(Error::Parse {
                        line: 0,
                        msg: format!("unknown coefficient ring `{text}`; use Z, Z2 or Q"),
                    }),
                }
            }
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::IntegersMod(p) => write!(f, "Z/{p}"),
            CoefficientRing::Rationals => write!(f, "Q"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Field arithmetic shared by the `Q` and `Z/p` code paths. Values are
/// kept normalized: for `Z/p` they are integers in `[0, p)`.
#[derive(Clone, Debug)]
enum FieldCtx {
    Rational,
    Mod(BigInt),
}

impl FieldCtx {
    fn of(ring: CoefficientRing) -> Option<FieldCtx> {
        match ring {
            CoefficientRing::Integers => None,
            CoefficientRing::Rationals => Some(FieldCtx::Rational),
            CoefficientRing::IntegersMod(p) => Some(FieldCtx::Mod(BigInt::from(p))),
        }
    }

    fn reduce(&self, x: &Coeff) -> Result<Coeff> {
        match self {
            FieldCtx::Rational => Ok(x.clone()),
            FieldCtx::Mod(p) => {
                let n = integral(x)?;
                Ok(Coeff::from_integer(n.mod_floor(p)))
            }
        }
    }

    fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.post(a + b)
    }

    fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.post(a - b)
    }

    fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.post(a * b)
    }

    fn neg(&self, a: &Coeff) -> Coeff {
        self.post(-a)
    }

    fn inv(&self, a: &Coeff) -> Coeff {
        match self {
            FieldCtx::Rational => a.recip(),
            FieldCtx::Mod(p) => {
                let n = a.to_integer();
                let e = n.extended_gcd(p);
                debug_assert!(e.gcd.is_one(), "modular inverse of a zero divisor");
                Coeff::from_integer(e.x.mod_floor(p))
            }
        }
    }

    fn post(&self, x: Coeff) -> Coeff {
        match self {
            FieldCtx::Rational => x,
            FieldCtx::Mod(p) => Coeff::from_integer(x.to_integer().mod_floor(p)),
        }
    }
}

fn integral(x: &Coeff) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::NonIntegralCoefficient(x.to_string()))
    }
}

/// Finitely supported sum of manifold classes with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<ManifoldClass, Coeff>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_class(class: &ManifoldClass) -> Self {
        Element::zero().with_term(class.clone(), rat(1))
    }

    /// Builder-style constructor used heavily by tests and fixtures.
    pub fn with_term(mut self, class: ManifoldClass, coeff: Coeff) -> Self {
        self.add_term(&class, &coeff);
        self
    }

    pub fn integral_combination(pairs: &[(ManifoldClass, i64)]) -> Self {
        let mut e = Element::zero();
        for (class, c) in pairs {
            e.add_term(class, &rat(*c));
        }
        e
    }

    pub fn add_term(&mut self, class: &ManifoldClass, coeff: &Coeff) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(class.clone()).or_insert_with(Coeff::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(class);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ManifoldClass, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ManifoldClass> {
        self.terms.keys()
    }

    pub fn coefficient(&self, class: &ManifoldClass) -> Coeff {
        self.terms.get(class).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(BigRational::is_integer)
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (c, x) in other.iter() {
            out.add_term(c, x);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let mut out = Element::zero();
        for (c, x) in self.iter() {
            out.add_term(c, &-x.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Coeff) -> Element {
        let mut out = Element::zero();
        for (c, x) in self.iter() {
            out.add_term(c, &(x * factor));
        }
        out
    }

    pub fn scale_int(&self, factor: i64) -> Element {
        self.scale(&rat(factor))
    }

    /// Multiplies every generator class by `class`, canonicalizing under
    /// the table's rules. Distinct generators whose products become equal
    /// after rewriting are combined.
    pub fn times_class(&self, class: &ManifoldClass, symbols: &SymbolTable) -> Result<Element> {
        let mut out = Element::zero();
        for (c, x) in self.iter() {
            let p = symbols.product(c, class)?;
            out.add_term(&p, x);
        }
        Ok(out)
    }

    /// Coordinate row vector over an explicit basis. Any class outside
    /// the basis with a nonzero coefficient is an error.
    pub fn coords(&self, basis: &[ManifoldClass]) -> Result<Vec<Coeff>> {
        for c in self.support() {
            if !basis.contains(c) {
                return Err(Error::RelationOffBasis(c.to_string()));
            }
        }
        Ok(basis.iter().map(|b| self.coefficient(b)).collect())
    }

    pub fn from_coords(basis: &[ManifoldClass], coords: &[Coeff]) -> Element {
        assert_eq!(basis.len(), coords.len());
        let mut e = Element::zero();
        for (b, c) in basis.iter().zip(coords) {
            e.add_term(b, c);
        }
        e
    }

    /// Zero test in the given ring: over `Z/p` a coefficient divisible by
    /// `p` counts as zero even though it is stored.
    pub fn is_zero_in(&self, ring: CoefficientRing) -> bool {
        match ring {
            CoefficientRing::Integers | CoefficientRing::Rationals => self.is_zero(),
            CoefficientRing::IntegersMod(p) => {
                let p = BigInt::from(p);
                self.terms.values().all(|c| {
                    c.is_integer() && c.to_integer().mod_floor(&p).is_zero()
                })
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (class, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.abs();
            let sign = coeff.is_negative();
            if i == 0 {
                if sign {
                    write!(f, "-")?;
                }
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "[{class}]")?;
        }
        Ok(())
    }
}

/// Bilinear extension of the product of classes: the product of two sums
/// is the sum of pairwise products of their generators.
pub fn bilinear_product(a: &Element, b: &Element, symbols: &SymbolTable) -> Result<Element> {
    let mut out = Element::zero();
    for (ca, xa) in a.iter() {
        for (cb, xb) in b.iter() {
            let p = symbols.product(ca, cb)?;
            out.add_term(&p, &(xa * xb));
        }
    }
    Ok(out)
}

/// One generator of a quotient module: its representative element and its
/// order (`None` for infinite order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGen {
    pub element: Element,
    pub order: Option<BigInt>,
}

/// Quotient of the free module on `basis` by the span of the relations,
/// in invariant-factor form.
///
/// `projection` is a `basis.len() x (torsion.len() + free_rank)` matrix
/// sending a coordinate row vector to quotient coordinates; the first
/// `torsion.len()` coordinates are understood modulo the matching factor.
/// It annihilates every relation by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub ring: CoefficientRing,
    pub basis: Vec<ManifoldClass>,
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    /// Always empty over a field.
    pub torsion: Vec<BigInt>,
    torsion_generators: Vec<Element>,
    free_generators: Vec<Element>,
    projection: Vec<Vec<Coeff>>,
}

impl Presentation {
    /// A free module of the given rank with no class basis attached,
    /// as produced by rank computations (graph homology). Such a
    /// presentation reports no generators and can only project the
    /// zero element.
    pub fn free(ring: CoefficientRing, rank: usize) -> Presentation {
        Presentation {
            ring,
            basis: Vec::new(),
            free_rank: rank,
            torsion: Vec::new(),
            torsion_generators: Vec::new(),
            free_generators: Vec::new(),
            projection: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn quotient_rank(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn projection(&self) -> &[Vec<Coeff>] {
        &self.projection
    }

    /// Quotient coordinates of an element, normalized: torsion
    /// coordinates are reduced into `[0, d)`, and over `Z/p` everything
    /// is reduced mod p.
    pub fn project(&self, e: &Element) -> Result<Vec<Coeff>> {
        let x = e.coords(&self.basis)?;
        if self.ring == CoefficientRing::Integers && !e.is_integral() {
            let bad = x.iter().find(|c| !c.is_integer()).unwrap();
            return Err(Error::NonIntegralCoefficient(bad.to_string()));
        }
        let width = self.quotient_rank();
        let mut out = vec![Coeff::zero(); width];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, out_j) in out.iter_mut().enumerate() {
                *out_j += xi * &self.projection[i][j];
            }
        }
        for (j, out_j) in out.iter_mut().enumerate() {
            match self.ring {
                CoefficientRing::Integers => {
                    if j < self.torsion.len() {
                        let d = &self.torsion[j];
                        *out_j = Coeff::from_integer(out_j.to_integer().mod_floor(d));
                    }
                }
                CoefficientRing::IntegersMod(p) => {
                    let p = BigInt::from(p);
                    *out_j = Coeff::from_integer(out_j.to_integer().mod_floor(&p));
                }
                CoefficientRing::Rationals => {}
            }
        }
        Ok(out)
    }

    pub fn class_is_zero(&self, e: &Element) -> Result<bool> {
        Ok(self.project(e)?.iter().all(Coeff::is_zero))
    }

    /// Torsion generators first (finite order), then free generators.
    pub fn generators(&self) -> Vec<QuotientGen> {
        let mut out = Vec::new();
        for (g, d) in self.torsion_generators.iter().zip(&self.torsion) {
            out.push(QuotientGen {
                element: g.clone(),
                order: Some(d.clone()),
            });
        }
        for g in &self.free_generators {
            out.push(QuotientGen {
                element: g.clone(),
                order: None,
            });
        }
        out
    }

    /// Same abstract module: equal ring, free rank and invariant factors.
    pub fn same_shape(&self, other: &Presentation) -> bool {
        self.ring == other.ring
            && self.free_rank == other.free_rank
            && self.torsion == other.torsion
    }

    /// Short human form such as `0`, `Z`, `Z/2`, `Z^2 + Z/4` or `(Z/2)^3`.
    pub fn describe(&self) -> String {
        let free = match (&self.ring, self.free_rank) {
            (_, 0) => None,
            (CoefficientRing::Integers, 1) => Some("Z".to_string()),
            (CoefficientRing::Integers, r) => Some(format!("Z^{r}")),
            (CoefficientRing::Rationals, 1) => Some("Q".to_string()),
            (CoefficientRing::Rationals, r) => Some(format!("Q^{r}")),
            (CoefficientRing::IntegersMod(p), 1) => Some(format!("Z/{p}")),
            (CoefficientRing::IntegersMod(p), r) => Some(format!("(Z/{p})^{r}")),
        };
        let mut parts: Vec<String> = free.into_iter().collect();
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Replaces generator representatives by single basis classes whenever
    /// a basis class projects exactly onto that quotient coordinate. The
    /// scan is deterministic (basis order), so reports are stable.
    fn simplify_generators(&mut self) {
        let width = self.quotient_rank();
        for slot in 0..width {
            let mut unit = vec![Coeff::zero(); width];
            unit[slot] = rat(1);
            for b in &self.basis {
                let e = Element::from_class(b);
                if let Ok(coords) = self.project(&e) {
                    if coords == unit {
                        if slot < self.torsion.len() {
                            self.torsion_generators[slot] = e;
                        } else {
                            self.free_generators[slot - self.torsion.len()] = e;
                        }
                        break;
                    }
                }
            }
        }
    }
}

/// Presents the quotient of the free module on `basis` by the span of
/// `relations`. Over `Z` this is Smith normal form; over a field it is a
/// rank computation and the torsion list stays empty.
pub fn cokernel_presentation(
    relations: &[Element],
    basis: &[ManifoldClass],
    ring: CoefficientRing,
) -> Result<Presentation> {
    let distinct: BTreeSet<&ManifoldClass> = basis.iter().collect();
    assert_eq!(distinct.len(), basis.len(), "basis classes must be distinct");
    let n = basis.len();
    let mut pres = match FieldCtx::of(ring) {
        None => {
            for r in relations {
                if !r.is_integral() {
                    return Err(Error::NonIntegralCoefficient(r.to_string()));
                }
            }
            let mut a = IntMat::zeros(relations.len(), n);
            for (i, r) in relations.iter().enumerate() {
                for (j, c) in r.coords(basis)?.iter().enumerate() {
                    a.set(i, j, c.to_integer());
                }
            }
            let s = smith_normal_form(&a);
            let rank = s.rank();
            let torsion_idx: Vec<usize> = (0..rank)
                .filter(|&i| !s.d.at(i, i).is_one())
                .collect();
            let free_idx: Vec<usize> = (rank..n).collect();
            let torsion: Vec<BigInt> =
                torsion_idx.iter().map(|&i| s.d.at(i, i).clone()).collect();
            let mut projection = vec![Vec::with_capacity(torsion_idx.len() + free_idx.len()); n];
            for (row, proj_row) in projection.iter_mut().enumerate() {
                for &i in torsion_idx.iter().chain(&free_idx) {
                    proj_row.push(Coeff::from_integer(s.v.at(row, i).clone()));
                }
            }
            let gen_from_row = |i: usize| {
                let coords: Vec<Coeff> = (0..n)
                    .map(|j| Coeff::from_integer(s.v_inv.at(i, j).clone()))
                    .collect();
                Element::from_coords(basis, &coords)
            };
            Presentation {
                ring,
                basis: basis.to_vec(),
                free_rank: free_idx.len(),
                torsion,
                torsion_generators: torsion_idx.iter().map(|&i| gen_from_row(i)).collect(),
                free_generators: free_idx.iter().map(|&i| gen_from_row(i)).collect(),
                projection,
            }
        }
        Some(ctx) => {
            let mut rows = Vec::with_capacity(relations.len());
            for r in relations {
                let coords = r.coords(basis)?;
                let mut row = Vec::with_capacity(n);
                for c in &coords {
                    row.push(ctx.reduce(c)?);
                }
                rows.push(row);
            }
            let pivots = rref(&ctx, &mut rows, n);
            let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
            let free_cols: Vec<usize> =
                (0..n).filter(|c| !pivot_set.contains(c)).collect();
            let mut projection = vec![vec![Coeff::zero(); free_cols.len()]; n];
            for (slot, &c) in free_cols.iter().enumerate() {
                projection[c][slot] = rat(1);
                for (i, &p) in pivots.iter().enumerate() {
                    projection[p][slot] = ctx.neg(&rows[i][c]);
                }
            }
            let free_generators: Vec<Element> = free_cols
                .iter()
                .map(|&c| Element::from_class(&basis[c]))
                .collect();
            Presentation {
                ring,
                basis: basis.to_vec(),
                free_rank: free_cols.len(),
                torsion: Vec::new(),
                torsion_generators: Vec::new(),
                free_generators,
                projection,
            }
        }
    };
    pres.simplify_generators();
    Ok(pres)
}

/// In-place reduced row echelon form; returns the pivot columns.
/// Deterministic: pivots are the first nonzero entry scanning rows
/// top-down within each column, columns left to right.
fn rref(ctx: &FieldCtx, rows: &mut [Vec<Coeff>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = ctx.inv(&rows[r][c].clone());
        for j in c..cols {
            rows[r][j] = ctx.mul(&rows[r][j], &inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..cols {
                let sub = ctx.mul(&f, &rows[r][j]);
                rows[i][j] = ctx.sub(&rows[i][j], &sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Result of a span membership query. When `contained` is true the
/// witness lists coefficients over the solver's generators and has been
/// checked by substitution.
#[derive(Clone, Debug)]
pub struct MembershipOutcome {
    pub contained: bool,
    pub witness: Option<Vec<Coeff>>,
}

/// Factors a generator list once so that many membership queries against
/// the same span stay cheap.
pub struct SpanSolver {
    ring: CoefficientRing,
    basis: Vec<ManifoldClass>,
    generators: Vec<Element>,
    mode: Mode,
}

enum Mode {
    Ints { smith: Smith, g: IntMat },
    Field { ctx: FieldCtx, gmat: Vec<Vec<Coeff>> },
}

impl SpanSolver {
    pub fn new(generators: &[Element], ring: CoefficientRing) -> Result<Self> {
        let basis: Vec<ManifoldClass> = generators
            .iter()
            .flat_map(|g| g.support().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let n = basis.len();
        let k = generators.len();
        let mode = match FieldCtx::of(ring) {
            None => {
                let mut g = IntMat::zeros(n, k);
                for (col, gen) in generators.iter().enumerate() {
                    if !gen.is_integral() {
                        return Err(Error::NonIntegralCoefficient(gen.to_string()));
                    }
                    for (row, c) in gen.coords(&basis)?.iter().enumerate() {
                        g.set(row, col, c.to_integer());
                    }
                }
                Mode::Ints {
                    smith: smith_normal_form(&g),
                    g,
                }
            }
            Some(ctx) => {
                let mut gmat = vec![vec![Coeff::zero(); k]; n];
                for (col, gen) in generators.iter().enumerate() {
                    for (row, c) in gen.coords(&basis)?.iter().enumerate() {
                        gmat[row][col] = ctx.reduce(c)?;
                    }
                }
                Mode::Field { ctx, gmat }
            }
        };
        Ok(SpanSolver {
            ring,
            basis,
            generators: generators.to_vec(),
            mode,
        })
    }

    pub fn basis(&self) -> &[ManifoldClass] {
        &self.basis
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Is `x` in the span of the generators over the solver's ring?
    pub fn solve(&self, x: &Element) -> Result<MembershipOutcome> {
        let miss = MembershipOutcome {
            contained: false,
            witness: None,
        };
        // A class outside the generators' joint support can only be hit
        // if its coefficient is already zero in the ring.
        let mut reduced = Element::zero();
        for (c, v) in x.iter() {
            if self.basis.contains(c) {
                reduced.add_term(c, v);
            } else {
                let dead = match self.ring {
                    CoefficientRing::IntegersMod(p) => {
                        v.is_integer()
                            && v.to_integer().mod_floor(&BigInt::from(p)).is_zero()
                    }
                    _ => false,
                };
                if !dead {
                    return Ok(miss);
                }
            }
        }
        match &self.mode {
            Mode::Ints { smith, g } => {
                if !reduced.is_integral() {
                    return Err(Error::NonIntegralCoefficient(reduced.to_string()));
                }
                let xvec: Vec<BigInt> = reduced
                    .coords(&self.basis)?
                    .iter()
                    .map(Coeff::to_integer)
                    .collect();
                let n = self.basis.len();
                let k = self.generators.len();
                let z = smith.u.mul_vec(&xvec);
                let mut y = vec![BigInt::zero(); k];
                for (i, zi) in z.iter().enumerate().take(n) {
                    let d = if i < n.min(k) {
                        smith.d.at(i, i).clone()
                    } else {
                        BigInt::zero()
                    };
                    if d.is_zero() {
                        if !zi.is_zero() {
                            return Ok(miss);
                        }
                    } else {
                        if !zi.is_multiple_of(&d) {
                            return Ok(miss);
                        }
                        y[i] = zi / &d;
                    }
                }
                let c = smith.v.mul_vec(&y);
                // Witnesses are always re-verified by substitution.
                assert_eq!(g.mul_vec(&c), xvec, "membership witness failed substitution");
                Ok(MembershipOutcome {
                    contained: true,
                    witness: Some(c.into_iter().map(Coeff::from_integer).collect()),
                })
            }
            Mode::Field { ctx, gmat } => {
                let n = self.basis.len();
                let k = self.generators.len();
                let xcoords = reduced.coords(&self.basis)?;
                let mut aug = vec![vec![Coeff::zero(); k + 1]; n];
                for i in 0..n {
                    aug[i][..k].clone_from_slice(&gmat[i]);
                    aug[i][k] = ctx.reduce(&xcoords[i])?;
                }
                let pivots = rref(ctx, &mut aug, k + 1);
                if pivots.contains(&k) {
                    return Ok(miss);
                }
                let mut c = vec![Coeff::zero(); k];
                for (i, &p) in pivots.iter().enumerate() {
                    c[p] = aug[i][k].clone();
                }
                // Substitution check in the field.
                for i in 0..n {
                    let mut acc = Coeff::zero();
                    for (j, cj) in c.iter().enumerate() {
                        acc = ctx.add(&acc, &ctx.mul(&gmat[i][j], cj));
                    }
                    assert_eq!(
                        acc,
                        ctx.reduce(&xcoords[i])?,
                        "membership witness failed substitution"
                    );
                }
                Ok(MembershipOutcome {
                    contained: true,
                    witness: Some(c),
                })
            }
        }
    }
}

/// One-shot membership query; see [`SpanSolver`] for the batched form.
pub fn membership(
    x: &Element,
    generators: &[Element],
    ring: CoefficientRing,
) -> Result<MembershipOutcome> {
    SpanSolver::new(generators, ring)?.solve(x)
}

/// Reference oracle: exhaustively tries every integer coefficient vector
/// with entries in `[-bound, bound]`. Finding a combination proves
/// membership; not finding one only bounds the search, so callers treat a
/// miss as inconclusive unless they constructed the instance.
pub fn exhaustive_membership(
    x: &Element,
    generators: &[Element],
    ring: CoefficientRing,
    bound: i64,
) -> Option<Vec<i64>> {
    let k = generators.len();
    let width = 2 * bound + 1;
    let total = (width as f64).powi(k as i32);
    assert!(total <= 2e7, "exhaustive search space too large");
    let mut c = vec![-bound; k];
    loop {
        let mut acc = x.neg();
        for (ci, gen) in c.iter().zip(generators) {
            acc = acc.add(&gen.scale_int(*ci));
        }
        if acc.is_zero_in(ring) {
            return Some(c);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return None;
            }
            c[pos] += 1;
            if c[pos] <= bound {
                break;
            }
            c[pos] = -bound;
            pos += 1;
        }
    }
}
