//! Lattices with exact rational Gram matrices: builtin constructions,
//! shell enumeration (the norm-counting measure behind the theta series),
//! duals, theta-series machinery, Poisson summation checks, center density,
//! and the dual-program feasibility report.

mod enumerate;
pub mod ratmat;
mod theta;

pub use theta::{
    center_density, dual_feasibility, laguerre_positivity_check, poisson_check, theta_t,
    theta_t_tol, theta_transform_check, CenterDensityResult, DualFeasibilityReport, PoissonReport,
    ThetaValue,
};

use crate::error::{Error, Result};
use enumerate::Enumerator;
use num_traits::Signed;
use ratmat::{det, format_rat, gram_from_basis, inverse, ldl, parse_rat, rat, rat_to_f64, Rat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A lattice given by its exact rational Gram matrix.
#[derive(Debug, Clone)]
pub struct Lattice {
    n: usize,
    gram: Vec<Vec<Rat>>,
    name: String,
}

/// Exact vector counts per norm, complete for all norms <= complete_up_to.
#[derive(Debug, Clone)]
pub struct ShellMap {
    pub entries: BTreeMap<Rat, u64>,
    pub complete_up_to: Rat,
}

impl ShellMap {
    /// Smallest positive norm (the squared minimal vector length).
    pub fn min_norm(&self) -> Option<&Rat> {
        self.entries.keys().find(|k| k.is_positive())
    }

    pub fn count(&self, norm: &Rat) -> u64 {
        self.entries.get(norm).copied().unwrap_or(0)
    }

    /// Shells of the lattice with Gram scaled by `factor` (norms scale the
    /// same way).
    pub fn scaled(&self, factor: &Rat) -> ShellMap {
        ShellMap {
            entries: self
                .entries
                .iter()
                .map(|(norm, count)| (norm * factor, *count))
                .collect(),
            complete_up_to: &self.complete_up_to * factor,
        }
    }
}

impl Lattice {
    /// Validates symmetry and positive definiteness (exact LDL pivots).
    pub fn new(name: impl Into<String>, gram: Vec<Vec<Rat>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("Gram matrix must be square".into()));
        }
        ldl(&gram)?; // symmetric positive definite or error
        Ok(Lattice {
            n,
            gram,
            name: name.into(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    pub fn determinant(&self) -> Rat {
        det(&self.gram).expect("validated at construction")
    }

    /// vol(R^n / Lambda) = sqrt(det Gram).
    pub fn covolume(&self) -> f64 {
        rat_to_f64(&self.determinant()).sqrt()
    }

    /// Lattice rescaled so norms scale by `factor` (Gram -> factor * Gram).
    pub fn scaled(&self, factor: &Rat) -> Result<Lattice> {
        if !factor.is_positive() {
            return Err(Error::InvalidInput("scale factor must be positive".into()));
        }
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|x| x * factor).collect())
            .collect();
        Lattice::new(format!("{}*{}", self.name, format_rat(factor)), gram)
    }

    /// Exact count of lattice vectors at each norm <= up_to.
    pub fn shells(&self, up_to: &Rat) -> Result<ShellMap> {
        self.shells_with_budget(up_to, 60_000_000)
    }

    pub fn shells_with_budget(&self, up_to: &Rat, budget: u64) -> Result<ShellMap> {
        if !up_to.is_positive() {
            return Err(Error::InvalidInput("shells bound must be positive".into()));
        }
        let en = Enumerator::new(&self.gram)?;
        let mut entries: BTreeMap<Rat, u64> = BTreeMap::new();
        en.run(up_to, None, budget, |v| {
            *entries.entry(v.norm).or_insert(0) += 1;
        })?;
        Ok(ShellMap {
            entries,
            complete_up_to: up_to.clone(),
        })
    }

    /// Visit (coords, exact norm of coords + shift) for all vectors with
    /// shifted norm <= up_to.
    pub(crate) fn enumerate_shifted(
        &self,
        up_to: &Rat,
        shift: Option<&[Rat]>,
        budget: u64,
        visit: impl FnMut(&[i64], &Rat),
    ) -> Result<u64> {
        let en = Enumerator::new(&self.gram)?;
        let mut visit = visit;
        en.run(up_to, shift, budget, |v| visit(v.coords, &v.norm))
    }

    /// The dual lattice: Gram^{-1}, exactly.
    pub fn dual(&self) -> Lattice {
        let gram = inverse(&self.gram).expect("positive definite");
        Lattice {
            n: self.n,
            gram,
            name: format!("{}*", self.name),
        }
    }

    /// Squared length of the shortest non-zero vector, exactly.
    pub fn min_norm(&self) -> Result<Rat> {
        // the smallest Gram diagonal entry is an attained norm, so the
        // minimum lies at or below it
        let cap = self
            .gram
            .iter()
            .enumerate()
            .map(|(i, row)| row[i].clone())
            .min()
            .expect("non-empty");
        let shells = self.shells(&cap)?;
        shells
            .min_norm()
            .cloned()
            .ok_or_else(|| Error::InvalidInput("no non-zero vector found".into()))
    }
}

/// Named builtin lattices: z1..z8, d4, e8, leech.
pub fn builtin(name: &str) -> Result<Lattice> {
    let key = name.to_ascii_lowercase();
    if let Some(dim) = key.strip_prefix('z') {
        if let Ok(n) = dim.parse::<usize>() {
            if (1..=8).contains(&n) {
                let gram = (0..n)
                    .map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect())
                    .collect();
                return Lattice::new(format!("Z^{n}"), gram);
            }
        }
    }
    match key.as_str() {
        "d4" => {
            let basis: Vec<Vec<Rat>> = [
                [1, -1, 0, 0],
                [0, 1, -1, 0],
                [0, 0, 1, -1],
                [0, 0, 1, 1],
            ]
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
            Lattice::new("D4", gram_from_basis(&basis))
        }
        "e8" => {
            // even unimodular root lattice, Gram of the simple-root basis
            let rows: [[i64; 8]; 8] = [
                [2, -1, 0, 0, 0, 0, 0, 0],
                [-1, 2, -1, 0, 0, 0, 0, 0],
                [0, -1, 2, -1, 0, 0, 0, 0],
                [0, 0, -1, 2, -1, 0, 0, 0],
                [0, 0, 0, -1, 2, -1, -1, 0],
                [0, 0, 0, 0, -1, 2, 0, 0],
                [0, 0, 0, 0, -1, 0, 2, -1],
                [0, 0, 0, 0, 0, 0, -1, 2],
            ];
            let gram = rows
                .iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect();
            Lattice::new("E8", gram)
        }
        "leech" => {
            let doc: LatticeFile = serde_json::from_str(include_str!("data/leech_gram.json"))
                .expect("bundled Leech Gram parses");
            doc.into_lattice()
        }
        _ => Err(Error::UnknownLattice(name.to_string())),
    }
}

/// On-disk lattice document: name, dimension, Gram as "p/q" strings.
#[derive(Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub name: String,
    pub n: usize,
    pub gram: Vec<Vec<String>>,
}

impl LatticeFile {
    pub fn into_lattice(self) -> Result<Lattice> {
        if self.gram.len() != self.n || self.gram.iter().any(|r| r.len() != self.n) {
            return Err(Error::InvalidInput(format!(
                "gram must be {0}x{0} to match n={0}",
                self.n
            )));
        }
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(self.name, gram)
    }

    pub fn from_lattice(l: &Lattice) -> Self {
        LatticeFile {
            name: l.name().to_string(),
            n: l.dimension(),
            gram: l
                .gram()
                .iter()
                .map(|row| row.iter().map(format_rat).collect())
                .collect(),
        }
    }
}

/// Parse the lattice definition text format.
pub fn parse_lattice_file(text: &str) -> Result<Lattice> {
    let doc: LatticeFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("lattice file: {e}")))?;
    doc.into_lattice()
}
