//! Pointed braided fusion category data over a number field.
//!
//! A pointed category is a finite abelian group with scalar associator and
//! braiding tables. Pentagon and hexagon checkers run exhaustively and
//! report the lexicographically least violation. Drinfeld centers are
//! constructed for trivial-associator inputs only.

use crate::groupcoh::FiniteGroup;
use crate::numfield::{FieldElement, NumberField};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatError {
    #[error("group must be abelian to carry a braiding")]
    NotAbelian,
    #[error("structure scalars must be nonzero")]
    ZeroScalar,
    #[error("table has the wrong size")]
    TableShape,
    #[error("field lacks the roots of unity needed for the characters (exponent {exponent})")]
    InsufficientRoots { exponent: u64 },
    #[error("operation requires a non-degenerate braided category")]
    DegenerateInput,
    #[error("subgroup is not closed")]
    NotASubgroup,
    #[error("group order {0} exceeds the supported cap of 64")]
    TooLarge(usize),
}

/// First pentagon violation, as the offending quadruple with both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct PentagonViolation {
    pub quadruple: (usize, usize, usize, usize),
    pub lhs: FieldElement,
    pub rhs: FieldElement,
}

/// First hexagon violation: which of the two hexagons, the triple, both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct HexagonViolation {
    pub hexagon: u8,
    pub triple: (usize, usize, usize),
    pub lhs: FieldElement,
    pub rhs: FieldElement,
}

/// Pointed braided category: abelian group, associator and braiding scalar
/// tables over an exact number field.
#[derive(Debug, Clone)]
pub struct PointedBraidedCategory {
    group: FiniteGroup,
    field: NumberField,
    associator: Vec<FieldElement>,
    braiding: Vec<FieldElement>,
    object_labels: Vec<String>,
    label: String,
}

impl PointedBraidedCategory {
    pub fn new(
        group: FiniteGroup,
        field: NumberField,
        associator: Vec<FieldElement>,
        braiding: Vec<FieldElement>,
        label: impl Into<String>,
    ) -> Result<Self, CatError> {
        let n = group.order();
        if n > 64 {
            return Err(CatError::TooLarge(n));
        }
        if !group.is_abelian() {
            return Err(CatError::NotAbelian);
        }
        if associator.len() != n * n * n || braiding.len() != n * n {
            return Err(CatError::TableShape);
        }
        if associator.iter().chain(braiding.iter()).any(|v| v.is_zero()) {
            return Err(CatError::ZeroScalar);
        }
        let object_labels = (0..n).map(|g| format!("g{g}")).collect();
        Ok(PointedBraidedCategory {
            group,
            field,
            associator,
            braiding,
            object_labels,
            label: label.into(),
        })
    }

    /// All structure scalars equal to one.
    pub fn with_trivial_tables(
        group: FiniteGroup,
        field: NumberField,
        label: impl Into<String>,
    ) -> Result<Self, CatError> {
        let n = group.order();
        let one = field.one();
        Self::new(
            group,
            field.clone(),
            vec![one.clone(); n * n * n],
            vec![one; n * n],
            label,
        )
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn object_label(&self, g: usize) -> &str {
        &self.object_labels[g]
    }

    pub fn set_object_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.group.order());
        self.object_labels = labels;
    }

    pub fn object_by_label(&self, name: &str) -> Option<usize> {
        self.object_labels.iter().position(|l| l == name)
    }

    pub fn associator_at(&self, g: usize, h: usize, k: usize) -> &FieldElement {
        let n = self.group.order();
        &self.associator[(g * n + h) * n + k]
    }

    pub fn braiding_at(&self, g: usize, h: usize) -> &FieldElement {
        &self.braiding[g * self.group.order() + h]
    }

    pub fn has_trivial_associator(&self) -> bool {
        self.associator.iter().all(|v| v.is_one())
    }

    /// Pentagon identity dω = 1, evaluated on all |A|^4 quadruples.
    pub fn check_pentagon(&self) -> Option<PentagonViolation> {
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                for k in 0..n {
                    let hk = self.group.mul(h, k);
                    for l in 0..n {
                        let kl = self.group.mul(k, l);
                        let lhs = self
                            .associator_at(h, k, l)
                            .mul(self.associator_at(g, hk, l))
                            .mul(self.associator_at(g, h, k));
                        let rhs = self
                            .associator_at(gh, k, l)
                            .mul(self.associator_at(g, h, kl));
                        if lhs != rhs {
                            return Some(PentagonViolation {
                                quadruple: (g, h, k, l),
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// Both hexagon identities, evaluated on all |A|^3 triples.
    pub fn check_hexagons(&self) -> Option<HexagonViolation> {
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                for k in 0..n {
                    let hk = self.group.mul(h, k);
                    // hexagon 1: ω(h,k,g) c(g,hk) ω(g,h,k) = c(g,k) ω(h,g,k) c(g,h)
                    let lhs = self
                        .associator_at(h, k, g)
                        .mul(self.braiding_at(g, hk))
                        .mul(self.associator_at(g, h, k));
                    let rhs = self
                        .braiding_at(g, k)
                        .mul(self.associator_at(h, g, k))
                        .mul(self.braiding_at(g, h));
                    if lhs != rhs {
                        return Some(HexagonViolation {
                            hexagon: 1,
                            triple: (g, h, k),
                            lhs,
                            rhs,
                        });
                    }
                    // hexagon 2: c(gh,k) ω(g,k,h) = ω(k,g,h) ω(g,h,k) c(g,k) c(h,k)
                    let lhs = self.braiding_at(gh, k).mul(self.associator_at(g, k, h));
                    let rhs = self
                        .associator_at(k, g, h)
                        .mul(self.associator_at(g, h, k))
                        .mul(self.braiding_at(g, k))
                        .mul(self.braiding_at(h, k));
                    if lhs != rhs {
                        return Some(HexagonViolation {
                            hexagon: 2,
                            triple: (g, h, k),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        None
    }

    /// Double braiding c(g,h) c(h,g).
    pub fn double_braiding(&self, g: usize, h: usize) -> FieldElement {
        self.braiding_at(g, h).mul(self.braiding_at(h, g))
    }

    /// The Müger center: objects whose double braiding with everything is 1.
    pub fn muger_center(&self) -> Subgroup {
        let n = self.group.order();
        let all: Vec<usize> = (0..n).collect();
        self.centralizer_of_elements(&all)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.muger_center().elements() == [self.group.identity()]
    }

    fn centralizer_of_elements(&self, hs: &[usize]) -> Subgroup {
        let n = self.group.order();
        let one = self.field.one();
        let elements: Vec<usize> = (0..n)
            .filter(|&g| hs.iter().all(|&h| self.double_braiding(g, h) == one))
            .collect();
        Subgroup::new(self.group.clone(), elements).expect("centralizer is a subgroup")
    }

    /// Centralizer of a subgroup: {g : c(g,h) c(h,g) = 1 for all h in H}.
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        assert_eq!(*h.parent(), self.group);
        self.centralizer_of_elements(h.elements())
    }

    /// Double-centralizer identity over every subgroup; requires a
    /// non-degenerate input. Returns the first failing subgroup, if any.
    pub fn double_centralizer_check(&self) -> Result<Option<Subgroup>, CatError> {
        if !self.is_nondegenerate() {
            return Err(CatError::DegenerateInput);
        }
        for elems in self.group.all_subgroups() {
            let h = Subgroup::new(self.group.clone(), elems)?;
            let zz = self.centralizer(&self.centralizer(&h));
            if zz.elements() != h.elements() {
                return Ok(Some(h));
            }
        }
        Ok(None)
    }
}

/// Subgroup of the underlying group of a pointed category, verified closed.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: FiniteGroup, mut elements: Vec<usize>) -> Result<Self, CatError> {
        elements.sort();
        elements.dedup();
        if !elements.contains(&parent.identity()) {
            return Err(CatError::NotASubgroup);
        }
        for &a in &elements {
            if !elements.contains(&parent.inv(a)) {
                return Err(CatError::NotASubgroup);
            }
            for &b in &elements {
                if !elements.contains(&parent.mul(a, b)) {
                    return Err(CatError::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { parent, elements })
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Subgroup {
            elements: vec![parent.identity()],
            parent: parent.clone(),
        }
    }

    pub fn generated_by(parent: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup {
            elements: parent.closure(gens),
            parent: parent.clone(),
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

/// Drinfeld center of Vect_K(A) with trivial associator: the pointed
/// braided category on A x Â, with Â realized on A through the standard
/// pairing of the cyclic decomposition. The braiding of ((g,χ),(h,ψ)) is
/// χ(h).
pub fn drinfeld_center_pointed(
    a: &FiniteGroup,
    field: &NumberField,
) -> Result<PointedBraidedCategory, CatError> {
    if !a.is_abelian() {
        return Err(CatError::NotAbelian);
    }
    let (factors, coords) = a.cyclic_decomposition();
    let exponent: u64 = factors.last().copied().unwrap_or(1);
    let zeta_e = if exponent == 1 {
        field.one()
    } else {
        match field.cyclotomic_order() {
            Some(n) if n % exponent == 0 => field.zeta_power((n / exponent) as i64),
            _ => return Err(CatError::InsufficientRoots { exponent }),
        }
    };
    let na = a.order();
    let center_group = FiniteGroup::direct_product(a, a);
    let n = center_group.order();
    // pairing <chi_b, a> = zeta_e^{sum coords_i(b) coords_i(a) e/d_i}
    let pair_exp = |b: usize, g: usize| -> u64 {
        let mut acc: u64 = 0;
        for (i, &d) in factors.iter().enumerate() {
            acc = (acc + coords[b][i] * coords[g][i] % exponent * (exponent / d)) % exponent;
        }
        acc
    };
    let one = field.one();
    let associator = vec![one.clone(); n * n * n];
    let mut braiding = vec![one; n * n];
    for x in 0..n {
        let (_ax, bx) = (x / na, x % na);
        for y in 0..n {
            let (ay, _by) = (y / na, y % na);
            braiding[x * n + y] = zeta_e.pow(pair_exp(bx, ay));
        }
    }
    let mut cat = PointedBraidedCategory::new(
        center_group,
        field.clone(),
        associator,
        braiding,
        format!("Z(Vect({}))", a.label()),
    )?;
    let labels = (0..n)
        .map(|x| format!("({},chi{})", x / na, x % na))
        .collect();
    cat.set_object_labels(labels);
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    fn semion() -> PointedBraidedCategory {
        let qi = NumberField::cyclotomic(4);
        let i = qi.generator();
        let mut assoc = vec![qi.one(); 8];
        assoc[7] = qi.from_i64(-1); // ω(1,1,1) = -1
        let mut braid = vec![qi.one(); 4];
        braid[3] = i; // c(1,1) = i
        PointedBraidedCategory::new(z2(), qi, assoc, braid, "semion").unwrap()
    }

    #[test]
    fn pentagon_cases() {
        let qq = NumberField::rationals();
        let triv = PointedBraidedCategory::with_trivial_tables(z2(), qq.clone(), "triv").unwrap();
        assert!(triv.check_pentagon().is_none());
        assert!(semion().check_pentagon().is_none());
        // ω(0,1,1) = -1 only: fails
        let mut assoc = vec![qq.one(); 8];
        assoc[3] = qq.from_i64(-1);
        let braid = vec![qq.one(); 4];
        let bad = PointedBraidedCategory::new(z2(), qq, assoc, braid, "bad").unwrap();
        let viol = bad.check_pentagon().expect("pentagon must fail");
        assert_eq!(viol.quadruple, (0, 0, 1, 1));
    }

    #[test]
    fn hexagon_cases() {
        assert!(semion().check_hexagons().is_none());
        // same ω but c(1,1) = -1 is not compatible
        let qi = NumberField::cyclotomic(4);
        let mut assoc = vec![qi.one(); 8];
        assoc[7] = qi.from_i64(-1);
        let mut braid = vec![qi.one(); 4];
        braid[3] = qi.from_i64(-1);
        let bad = PointedBraidedCategory::new(z2(), qi, assoc, braid, "antisemion?").unwrap();
        assert!(bad.check_hexagons().is_some());
    }

    #[test]
    fn center_of_z2_is_toric_code_table() {
        let qi = NumberField::cyclotomic(4);
        let cat = drinfeld_center_pointed(&z2(), &qi).unwrap();
        assert_eq!(cat.group().order(), 4);
        assert!(cat.has_trivial_associator());
        assert!(cat.check_pentagon().is_none());
        assert!(cat.check_hexagons().is_none());
        // braiding ((a,b),(a',b')) = (-1)^{b a'}
        for x in 0..4usize {
            for y in 0..4usize {
                let (bx, ay) = (x % 2, y / 2);
                let expect = if bx * ay % 2 == 1 {
                    qi.from_i64(-1)
                } else {
                    qi.one()
                };
                assert_eq!(*cat.braiding_at(x, y), expect, "braiding at {x},{y}");
            }
        }
        assert!(cat.is_nondegenerate());
    }

    #[test]
    fn center_insufficient_roots() {
        let qq = NumberField::rationals();
        assert!(matches!(
            drinfeld_center_pointed(&z2(), &qq),
            Err(CatError::InsufficientRoots { exponent: 2 })
        ));
        // trivial group works over any field
        let t = FiniteGroup::trivial();
        let c = drinfeld_center_pointed(&t, &qq).unwrap();
        assert_eq!(c.group().order(), 1);
    }

    #[test]
    fn center_of_z3() {
        let k3 = NumberField::cyclotomic(3);
        let z3 = FiniteGroup::cyclic(3);
        let cat = drinfeld_center_pointed(&z3, &k3).unwrap();
        assert_eq!(cat.group().order(), 9);
        assert!(cat.check_hexagons().is_none());
        assert!(cat.is_nondegenerate());
        // braiding ((a,b),(a',b')) = zeta3^{b a'}
        let zeta = k3.generator();
        for x in 0..9usize {
            for y in 0..9usize {
                let (bx, ay) = (x % 3, y / 3);
                assert_eq!(
                    *cat.braiding_at(x, y),
                    zeta.pow((bx * ay) as u64),
                    "at {x},{y}"
                );
            }
        }
    }

    #[test]
    fn muger_centers() {
        let qi = NumberField::cyclotomic(4);
        let cat = drinfeld_center_pointed(&z2(), &qi).unwrap();
        assert_eq!(cat.muger_center().elements(), &[0]);
        // symmetric braiding: all of A is central
        let v4 = FiniteGroup::direct_product(&z2(), &z2());
        let sym =
            PointedBraidedCategory::with_trivial_tables(v4, NumberField::rationals(), "sym")
                .unwrap();
        assert_eq!(sym.muger_center().order(), 4);
        assert!(!sym.is_nondegenerate());
        assert!(matches!(
            sym.double_centralizer_check(),
            Err(CatError::DegenerateInput)
        ));
        // semion: c(1,1)^2 = -1 != 1
        assert_eq!(semion().muger_center().elements(), &[0]);
        assert!(semion().is_nondegenerate());
    }

    #[test]
    fn centralizers_in_toric_code() {
        let qi = NumberField::cyclotomic(4);
        let cat = drinfeld_center_pointed(&z2(), &qi).unwrap();
        let g = cat.group().clone();
        // E = (1, chi_0) has index 2, M = (0, chi_1) index 1, EM index 3
        let e_span = Subgroup::generated_by(&g, &[2]);
        let ze = cat.centralizer(&e_span);
        assert_eq!(ze.elements(), e_span.elements());
        let em_span = Subgroup::generated_by(&g, &[3]);
        let zem = cat.centralizer(&em_span);
        assert_eq!(zem.elements(), em_span.elements());
        // trivial subgroup centralizes everything
        let t = Subgroup::trivial(&g);
        assert_eq!(cat.centralizer(&t).order(), 4);
        // |H| * |Z(H)| = |A| for all subgroups
        for elems in g.all_subgroups() {
            let h = Subgroup::new(g.clone(), elems).unwrap();
            let z = cat.centralizer(&h);
            assert_eq!(h.order() * z.order(), g.order());
        }
    }

    #[test]
    fn double_centralizer_exhaustive() {
        let qi = NumberField::cyclotomic(4);
        let cat = drinfeld_center_pointed(&z2(), &qi).unwrap();
        assert_eq!(cat.group().all_subgroups().len(), 5);
        assert_eq!(cat.double_centralizer_check().unwrap(), None);
        let k3 = NumberField::cyclotomic(3);
        let cat3 = drinfeld_center_pointed(&FiniteGroup::cyclic(3), &k3).unwrap();
        assert_eq!(cat3.double_centralizer_check().unwrap(), None);
    }

    #[test]
    fn centralizer_inclusion_reversing() {
        let k3 = NumberField::cyclotomic(3);
        let cat = drinfeld_center_pointed(&FiniteGroup::cyclic(3), &k3).unwrap();
        let g = cat.group().clone();
        let subs: Vec<Subgroup> = g
            .all_subgroups()
            .into_iter()
            .map(|e| Subgroup::new(g.clone(), e).unwrap())
            .collect();
        for h in &subs {
            for k in &subs {
                let h_in_k = h.elements().iter().all(|e| k.contains(*e));
                if h_in_k {
                    let zh = cat.centralizer(h);
                    let zk = cat.centralizer(k);
                    assert!(zk.elements().iter().all(|e| zh.contains(*e)));
                }
            }
        }
        // muger center equals centralizer of the full group
        let full = Subgroup::new(g.clone(), (0..g.order()).collect()).unwrap();
        assert_eq!(cat.muger_center().elements(), cat.centralizer(&full).elements());
    }

    #[test]
    fn zero_scalar_rejected() {
        let qq = NumberField::rationals();
        let mut assoc = vec![qq.one(); 8];
        assoc[0] = qq.from_rational(q(0));
        let braid = vec![qq.one(); 4];
        assert!(matches!(
            PointedBraidedCategory::new(z2(), qq, assoc, braid, "bad"),
            Err(CatError::ZeroScalar)
        ));
    }
}
