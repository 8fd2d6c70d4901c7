//! Named, interchangeable implementations looked up at run time.
//!
//! [`Registry`] maps names to boxed trait objects. The dimension of the
//! Terwilliger algebra has four registered methods, which the verification
//! suites and the table builder compare against each other.

use crate::error::{Error, Result};
use crate::johnson::{terwilliger_blocks, terwilliger_dim_bruteforce, terwilliger_dim_formula};
use crate::lattice::{slice_decomposition_profile, Subset};

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<(&'static str, Box<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: Vec::new() }
    }

    /// Adds an entry; a later entry with the same name replaces the earlier.
    pub fn register(&mut self, name: &'static str, item: Box<T>) {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = item,
            None => self.entries.push((name, item)),
        }
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, item)| item.as_ref())
            .ok_or_else(|| Error::UnknownName { name: format!("{} {name}", self.kind), known: self.names().join(", ") })
    }

    /// Registered names in registration order.
    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &T)> {
        self.entries.iter().map(|(n, item)| (*n, item.as_ref()))
    }
}

/// Inputs a dimension method may need beyond `(D, k)`.
#[derive(Clone, Copy, Debug)]
pub struct DimensionContext {
    pub anchor: Subset,
    pub cap: u64,
}

pub trait DimensionMethod: Send + Sync {
    fn describe(&self) -> &'static str;

    /// `dim T(x0)` for `J(D,k)`.
    fn dimension(&self, d: u32, k: u32, ctx: &DimensionContext) -> Result<u64>;
}

struct BruteForce;

impl DimensionMethod for BruteForce {
    fn describe(&self) -> &'static str {
        "rank of the algebra generated by the adjacency and dual adjacency operators"
    }

    fn dimension(&self, d: u32, k: u32, ctx: &DimensionContext) -> Result<u64> {
        terwilliger_dim_bruteforce(d, k, ctx.anchor, ctx.cap)
    }
}

struct Formula;

impl DimensionMethod for Formula {
    fn describe(&self) -> &'static str {
        "closed binomial formula, case chosen by k against D/3, D/2, 2D/3"
    }

    fn dimension(&self, d: u32, k: u32, _: &DimensionContext) -> Result<u64> {
        Ok(terwilliger_dim_formula(d, k)?.1)
    }
}

struct Blocks;

impl DimensionMethod for Blocks {
    fn describe(&self) -> &'static str {
        "sum of squared Wedderburn block sizes"
    }

    fn dimension(&self, d: u32, k: u32, _: &DimensionContext) -> Result<u64> {
        Ok(terwilliger_blocks(d, k)?.wedderburn_dim())
    }
}

struct Profile;

impl DimensionMethod for Profile {
    fn describe(&self) -> &'static str {
        "sum of squared dimensions over the irreducible classes of the k-slice"
    }

    fn dimension(&self, d: u32, k: u32, _: &DimensionContext) -> Result<u64> {
        if k == 0 || k >= d {
            return Err(Error::OutOfRange(format!("J(D,k) needs 1 <= k <= D-1, got D = {d}, k = {k}")));
        }
        Ok(slice_decomposition_profile(d, k.min(d - k))?.wedderburn_dim())
    }
}

/// `bruteforce`, `formula`, `blocks`, `profile`.
pub fn dimension_methods() -> Registry<dyn DimensionMethod> {
    let mut r: Registry<dyn DimensionMethod> = Registry::new("dimension method");
    r.register("bruteforce", Box::new(BruteForce));
    r.register("formula", Box::new(Formula));
    r.register("blocks", Box::new(Blocks));
    r.register("profile", Box::new(Profile));
    r
}
