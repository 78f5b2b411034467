//! Formal fiber symbols.
//!
//! Fibers are never stored as actual manifolds. An [`Atom`] is a named
//! diffeomorphism class with a dimension and orientability data; a
//! [`ManifoldClass`] is a finite product of atoms, kept as a sorted multiset
//! of atom names so that equal products compare equal structurally.
//! A [`SymbolTable`] owns the atom declarations together with the rewrite
//! rules that identify products (for instance a homotopy sphere times a
//! circle with the standard sphere times a circle). Every class handed out
//! by a table is already in canonical (fully rewritten, sorted) form.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Rewriting stops with an error after this many rule applications.
pub const MAX_REWRITE_STEPS: usize = 10_000;

/// A named diffeomorphism class of a closed connected manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    pub dim: u32,
    pub orientable: bool,
    pub oriented: bool,
    /// Orientation-reversed partner, if one was declared. Reversal has no
    /// automatic sign rules; absent partner means reversal is undefined.
    pub reverse: Option<String>,
}

/// A product of atoms, canonically a sorted multiset of atom names.
///
/// The empty product is never constructed; every class has at least one
/// factor. Ordering and equality are plain lexicographic comparison of the
/// factor lists, which is meaningful because construction canonicalizes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ManifoldClass {
    factors: Vec<String>,
}

impl ManifoldClass {
    fn from_sorted(factors: Vec<String>) -> Self {
        debug_assert!(!factors.is_empty());
        debug_assert!(factors.windows(2).all(|w| w[0] <= w[1]));
        ManifoldClass { factors }
    }

    pub fn factors(&self) -> &[String] {
        &self.factors
    }

    /// Number of atom factors, counted with multiplicity.
    pub fn arity(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for ManifoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.factors.join("*"))
    }
}

/// Identifies the multiset `lhs` with `rhs` inside any product containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Vec<String>,
    rhs: Vec<String>,
}

impl RewriteRule {
    pub fn lhs(&self) -> &[String] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[String] {
        &self.rhs
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.lhs.join("*"), self.rhs.join("*"))
    }
}

/// Atom declarations plus rewrite rules, in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    atoms: Vec<Atom>,
    rules: Vec<RewriteRule>,
}

impl SymbolTable {
    pub fn new() -> Self {
        SymbolTable::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn atom(&self, name: &str) -> Option<&Atom> {
        self.atoms.iter().find(|a| a.name == name)
    }

    pub fn declare_atom(
        &mut self,
        name: &str,
        dim: u32,
        orientable: bool,
        oriented: bool,
    ) -> Result<()> {
        if self.atom(name).is_some() {
            return Err(Error::DuplicateAtom(name.to_string()));
        }
        if dim < 1 {
            return Err(Error::BadDimension {
                name: name.to_string(),
                dim: dim as i64,
            });
        }
        if oriented && !orientable {
            return Err(Error::MixedOrientation(name.to_string()));
        }
        self.atoms.push(Atom {
            name: name.to_string(),
            dim,
            orientable,
            oriented,
            reverse: None,
        });
        Ok(())
    }

    /// Declares `partner` as the orientation reversal of `name`. Both atoms
    /// must exist, be oriented, and agree in dimension.
    pub fn set_reverse(&mut self, name: &str, partner: &str) -> Result<()> {
        let bad = |reason: &str| Error::BadReversePartner {
            name: name.to_string(),
            partner: partner.to_string(),
            reason: reason.to_string(),
        };
        let a = self
            .atom(name)
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))?
            .clone();
        let b = self
            .atom(partner)
            .ok_or_else(|| Error::UnknownAtom(partner.to_string()))?
            .clone();
        if !a.oriented || !b.oriented {
            return Err(bad("both atoms must be oriented"));
        }
        if a.dim != b.dim {
            return Err(bad("dimensions differ"));
        }
        for (this, other) in [(name, partner), (partner, name)] {
            let slot = self.atoms.iter_mut().find(|at| at.name == this).unwrap();
            slot.reverse = Some(other.to_string());
        }
        Ok(())
    }

    fn check_names(&self, names: &[&str]) -> Result<()> {
        for n in names {
            if self.atom(n).is_none() {
                return Err(Error::UnknownAtom(n.to_string()));
            }
        }
        Ok(())
    }

    fn total_dim(&self, names: &[String]) -> u32 {
        names.iter().map(|n| self.atom(n).map_or(0, |a| a.dim)).sum()
    }

    fn all_orientable(&self, names: &[String]) -> bool {
        names.iter().all(|n| self.atom(n).is_some_and(|a| a.orientable))
    }

    /// Adds a rewrite rule identifying the product `lhs` with `rhs`.
    /// Rules must preserve total dimension and orientability.
    pub fn add_rule(&mut self, lhs: &[&str], rhs: &[&str]) -> Result<()> {
        assert!(!lhs.is_empty() && !rhs.is_empty(), "rules need nonempty sides");
        self.check_names(lhs)?;
        self.check_names(rhs)?;
        let mut lhs: Vec<String> = lhs.iter().map(|s| s.to_string()).collect();
        let mut rhs: Vec<String> = rhs.iter().map(|s| s.to_string()).collect();
        lhs.sort();
        rhs.sort();
        let rule = RewriteRule { lhs, rhs };
        if self.total_dim(&rule.lhs) != self.total_dim(&rule.rhs) {
            return Err(Error::RuleDimensionMismatch(rule.to_string()));
        }
        if self.all_orientable(&rule.lhs) != self.all_orientable(&rule.rhs) {
            return Err(Error::RuleOrientabilityMismatch(rule.to_string()));
        }
        self.rules.push(rule);
        Ok(())
    }

    /// Builds the canonical class with the given atom factors.
    pub fn class(&self, factors: &[&str]) -> Result<ManifoldClass> {
        self.check_names(factors)?;
        let names: Vec<String> = factors.iter().map(|s| s.to_string()).collect();
        Ok(ManifoldClass::from_sorted(self.canonicalize(names)?))
    }

    /// Parses `A*B*C` into a canonical class.
    pub fn parse_label(&self, text: &str) -> Result<ManifoldClass> {
        let parts: Vec<&str> = text.split('*').map(str::trim).collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::UnknownAtom(text.to_string()));
        }
        self.class(&parts)
    }

    /// Product of classes: multiset union of factors, then canonicalization.
    pub fn product(&self, a: &ManifoldClass, b: &ManifoldClass) -> Result<ManifoldClass> {
        let mut names = a.factors.clone();
        names.extend(b.factors.iter().cloned());
        Ok(ManifoldClass::from_sorted(self.canonicalize(names)?))
    }

    /// Re-canonicalizes a class under this table's rules. Used when a class
    /// built for one table is moved into a merged table with more rules.
    pub fn recanonicalize(&self, class: &ManifoldClass) -> Result<ManifoldClass> {
        let refs: Vec<&str> = class.factors.iter().map(String::as_str).collect();
        self.class(&refs)
    }

    /// Applies rules until none matches: rules are scanned in declaration
    /// order and the first match is applied to the sorted factor multiset,
    /// then the scan restarts. Stops with an error after
    /// [`MAX_REWRITE_STEPS`] applications.
    fn canonicalize(&self, mut names: Vec<String>) -> Result<Vec<String>> {
        names.sort();
        if self.rules.is_empty() {
            return Ok(names);
        }
        let mut steps = 0;
        'rewrite: loop {
            for rule in &self.rules {
                if remove_multiset(&mut names, &rule.lhs) {
                    names.extend(rule.rhs.iter().cloned());
                    names.sort();
                    steps += 1;
                    if steps >= MAX_REWRITE_STEPS {
                        return Err(Error::NonTerminatingRules(MAX_REWRITE_STEPS));
                    }
                    continue 'rewrite;
                }
            }
            return Ok(names);
        }
    }

    pub fn dimension(&self, class: &ManifoldClass) -> u32 {
        self.total_dim(&class.factors)
    }

    /// A product is orientable exactly when every factor is.
    pub fn orientable(&self, class: &ManifoldClass) -> bool {
        self.all_orientable(&class.factors)
    }

    pub fn oriented(&self, class: &ManifoldClass) -> bool {
        class
            .factors
            .iter()
            .all(|n| self.atom(n).is_some_and(|a| a.oriented))
    }

    /// Union of two tables. Atoms with equal names must agree in every
    /// field; rules are concatenated (self first), dropping exact repeats.
    pub fn merge(&self, other: &SymbolTable) -> Result<SymbolTable> {
        let mut out = self.clone();
        for atom in &other.atoms {
            match out.atom(&atom.name) {
                None => out.atoms.push(atom.clone()),
                Some(existing) if existing == atom => {}
                Some(_) => return Err(Error::AtomClash(atom.name.clone())),
            }
        }
        for rule in &other.rules {
            if !out.rules.contains(rule) {
                out.rules.push(rule.clone());
            }
        }
        Ok(out)
    }
}

/// Removes `needle` from `haystack` as a multiset. Returns false (leaving
/// `haystack` unchanged) when `needle` is not contained.
fn remove_multiset(haystack: &mut Vec<String>, needle: &[String]) -> bool {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for n in needle {
        *counts.entry(n.as_str()).or_default() += 1;
    }
    for (name, need) in &counts {
        let have = haystack.iter().filter(|h| h.as_str() == *name).count();
        if have < *need {
            return false;
        }
    }
    for (name, need) in counts {
        for _ in 0..need {
            let pos = haystack.iter().position(|h| h == name).unwrap();
            haystack.remove(pos);
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> SymbolTable {
        let mut t = SymbolTable::new();
        t.declare_atom("S1", 1, true, true).unwrap();
        t.declare_atom("S2", 2, true, true).unwrap();
        t.declare_atom("K", 2, false, false).unwrap();
        t
    }

    #[test]
    fn product_sorts_factors_and_adds_dimensions() {
        let t = table();
        let s2 = t.class(&["S2"]).unwrap();
        let s1 = t.class(&["S1"]).unwrap();
        let p = t.product(&s2, &s1).unwrap();
        assert_eq!(p.to_string(), "S1*S2");
        assert_eq!(t.dimension(&p), 3);
    }

    #[test]
    fn product_is_commutative_and_associative() {
        let t = table();
        let a = t.class(&["S1"]).unwrap();
        let b = t.class(&["S2"]).unwrap();
        let c = t.class(&["K"]).unwrap();
        let ab_c = t.product(&t.product(&a, &b).unwrap(), &c).unwrap();
        let a_bc = t.product(&a, &t.product(&b, &c).unwrap()).unwrap();
        assert_eq!(t.product(&a, &b).unwrap(), t.product(&b, &a).unwrap());
        assert_eq!(ab_c, a_bc);
        assert_eq!(t.dimension(&ab_c), 5);
    }

    #[test]
    fn orientability_of_products() {
        let t = table();
        let p = t.parse_label("S2*K").unwrap();
        assert!(!t.orientable(&p));
        assert!(t.orientable(&t.parse_label("S1*S2").unwrap()));
    }

    #[test]
    fn single_atom_rule_rewrites_products() {
        let mut t = SymbolTable::new();
        t.declare_atom("Sigma", 10, true, true).unwrap();
        t.declare_atom("S10", 10, true, true).unwrap();
        t.declare_atom("S1", 1, true, true).unwrap();
        t.add_rule(&["Sigma"], &["S10"]).unwrap();
        let sigma = t.class(&["Sigma"]).unwrap();
        assert_eq!(sigma.to_string(), "S10");
        let p = t.product(&t.class(&["Sigma"]).unwrap(), &t.class(&["S1"]).unwrap());
        assert_eq!(p.unwrap().to_string(), "S1*S10");
    }

    #[test]
    fn pair_rule_only_fires_on_the_full_pair() {
        let mut t = SymbolTable::new();
        t.declare_atom("Sigma", 10, true, true).unwrap();
        t.declare_atom("S10", 10, true, true).unwrap();
        t.declare_atom("S1", 1, true, true).unwrap();
        t.add_rule(&["Sigma", "S1"], &["S10", "S1"]).unwrap();
        // Alone, Sigma stays Sigma: the rule matches the pair only.
        assert_eq!(t.class(&["Sigma"]).unwrap().to_string(), "Sigma");
        assert_eq!(t.parse_label("Sigma*S1").unwrap().to_string(), "S1*S10");
        // With a bystander factor the pair still rewrites.
        assert_eq!(
            t.parse_label("Sigma*S1*S10").unwrap().to_string(),
            "S1*S10*S10"
        );
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let mut t = table();
        t.declare_atom("T2", 2, true, true).unwrap();
        t.add_rule(&["T2"], &["S2"]).unwrap();
        let once = t.parse_label("T2*S1").unwrap();
        let twice = t.recanonicalize(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn cyclic_rules_hit_the_step_bound() {
        let mut t = table();
        t.declare_atom("T2", 2, true, true).unwrap();
        t.add_rule(&["T2"], &["S2"]).unwrap();
        t.add_rule(&["S2"], &["T2"]).unwrap();
        match t.class(&["T2"]) {
            Err(Error::NonTerminatingRules(n)) => assert_eq!(n, MAX_REWRITE_STEPS),
            other => panic!("expected non-termination, got {other:?}"),
        }
    }

    #[test]
    fn rule_validation_rejects_dimension_and_orientability_changes() {
        let mut t = table();
        assert!(matches!(
            t.add_rule(&["S1"], &["S2"]),
            Err(Error::RuleDimensionMismatch(_))
        ));
        assert!(matches!(
            t.add_rule(&["S2"], &["K"]),
            Err(Error::RuleOrientabilityMismatch(_))
        ));
    }

    #[test]
    fn atom_declaration_errors() {
        let mut t = table();
        assert!(matches!(
            t.declare_atom("S2", 2, true, true),
            Err(Error::DuplicateAtom(_))
        ));
        assert!(matches!(
            t.declare_atom("pt", 0, true, false),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn reverse_partner_round_trip() {
        let mut t = SymbolTable::new();
        t.declare_atom("L1", 3, true, true).unwrap();
        t.declare_atom("L1r", 3, true, true).unwrap();
        t.set_reverse("L1", "L1r").unwrap();
        assert_eq!(t.atom("L1").unwrap().reverse.as_deref(), Some("L1r"));
        assert_eq!(t.atom("L1r").unwrap().reverse.as_deref(), Some("L1"));
        let mut t2 = table();
        assert!(t2.set_reverse("S2", "K").is_err());
    }

    #[test]
    fn merge_unions_atoms_and_rejects_clashes() {
        let a = table();
        let mut b = SymbolTable::new();
        b.declare_atom("T2", 2, true, true).unwrap();
        b.declare_atom("S1", 1, true, true).unwrap();
        let m = a.merge(&b).unwrap();
        assert_eq!(m.atoms().len(), 4);

        let mut clash = SymbolTable::new();
        clash.declare_atom("S1", 5, true, true).unwrap();
        assert!(matches!(a.merge(&clash), Err(Error::AtomClash(_))));
    }
}
