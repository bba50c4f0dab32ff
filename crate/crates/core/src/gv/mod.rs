//! BPS (Gopakumar-Vafa) calculus for connected and disconnected pairs
//! potentials.

pub mod bps;
pub mod phi;
pub mod reconstruct;
pub mod vd;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Result;
use crate::qseries::{ClassLattice, ClassVector, Rational};

pub use bps::{
    extract_gv, gv_connected, gv_generate, gv_roundtrip, integrality_check,
    integrality_check_series, product_form, vanishing_check, IntegralityReport,
};
pub use phi::{bps_from_phi, fano_extract, genus_sign, phi_power, v0_decompose, PhiDecomposition};
pub use reconstruct::reconstruct_from_truncation;
pub use vd::{vd_membership, vd_membership_rf, VdMembership};

/// Finitely many nonzero invariants `n_{g,β}`.
#[derive(Clone, Debug)]
pub struct GVTable {
    lattice: ClassLattice,
    entries: BTreeMap<(ClassVector, i64), Rational>,
    /// For extracted tables: per class, the smallest genus that the input
    /// windows determine.
    genus_floor: BTreeMap<ClassVector, i64>,
}

impl PartialEq for GVTable {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.entries == other.entries
    }
}

impl GVTable {
    pub fn new(lattice: ClassLattice) -> Self {
        GVTable {
            lattice,
            entries: BTreeMap::new(),
            genus_floor: BTreeMap::new(),
        }
    }

    pub fn lattice(&self) -> &ClassLattice {
        &self.lattice
    }

    /// Sets `n_{g,β}`; zero removes the entry.
    pub fn insert(&mut self, g: i64, beta: ClassVector, n: Rational) -> Result<()> {
        self.lattice.check(&beta)?;
        if n.is_zero() {
            self.entries.remove(&(beta, g));
        } else {
            self.entries.insert((beta, g), n);
        }
        Ok(())
    }

    pub fn get(&self, g: i64, beta: &ClassVector) -> Rational {
        self.entries
            .get(&(beta.clone(), g))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `(g, β, n)` in class order, then genus order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &ClassVector, &Rational)> + '_ {
        self.entries.iter().map(|((b, g), n)| (*g, b, n))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries of one class as `g -> n`.
    pub fn class_entries(&self, beta: &ClassVector) -> BTreeMap<i64, Rational> {
        self.entries
            .range((beta.clone(), i64::MIN)..=(beta.clone(), i64::MAX))
            .map(|((_, g), n)| (*g, n.clone()))
            .collect()
    }

    pub fn max_degree(&self) -> u64 {
        self.entries
            .keys()
            .map(|(b, _)| self.lattice.degree(b))
            .max()
            .unwrap_or(0)
    }

    pub fn min_genus(&self) -> Option<i64> {
        self.entries.keys().map(|(_, g)| *g).min()
    }

    /// `max ceil((g - 1) / deg β)` over entries with `g > 1`: the pole order
    /// per unit degree of the generated potential.
    pub fn pole_density(&self) -> i64 {
        self.entries
            .keys()
            .filter(|(_, g)| *g > 1)
            .map(|(b, g)| {
                let d = self.lattice.degree(b) as i64;
                (g - 1 + d - 1) / d
            })
            .max()
            .unwrap_or(0)
    }

    pub fn genus_floor(&self, beta: &ClassVector) -> Option<i64> {
        self.genus_floor.get(beta).copied()
    }

    pub(crate) fn set_genus_floor(&mut self, beta: ClassVector, g: i64) {
        self.genus_floor.insert(beta, g);
    }

    /// Entries that are not integers.
    pub fn non_integral(&self) -> Vec<(i64, ClassVector, Rational)> {
        self.iter()
            .filter(|(_, _, n)| !n.is_integer())
            .map(|(g, b, n)| (g, b.clone(), n.clone()))
            .collect()
    }
}
