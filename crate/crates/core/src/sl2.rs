//! Finite-dimensional U(sl2)-modules as explicit matrices: the irreducible
//! modules `L_n`, the Casimir element, and tensor products pulled back along
//! the comultiplication `X -> X (x) 1 + 1 (x) X`.

use crate::error::{Error, Result};
use crate::matrix::{commutator, eigenspace_basis, kron, RepMatrix};
use crate::rational::{q, Rational};

/// Images of `E`, `F`, `H` and the Casimir element `Λ` in some module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Module {
    pub e: RepMatrix,
    pub f: RepMatrix,
    pub h: RepMatrix,
    pub lambda: RepMatrix,
}

impl Sl2Module {
    /// Builds the module from `E`, `F`, `H`, computing `Λ` from them.
    pub fn from_generators(e: RepMatrix, f: RepMatrix, h: RepMatrix) -> Result<Self> {
        let lambda = casimir_matrix(&e, &f, &h)?;
        Ok(Sl2Module { e, f, h, lambda })
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    /// The three defining relations `[H,E]=2E`, `[H,F]=-2F`, `[E,F]=H`.
    pub fn relations(&self) -> Vec<(&'static str, bool)> {
        let two = q(2, 1);
        let he = commutator(&self.h, &self.e).expect("square");
        let hf = commutator(&self.h, &self.f).expect("square");
        let ef = commutator(&self.e, &self.f).expect("square");
        vec![
            ("[H,E]=2E", he == self.e.scale(&two)),
            ("[H,F]=-2F", hf == self.f.scale(&-two)),
            ("[E,F]=H", ef == self.h),
        ]
    }

    pub fn satisfies_relations(&self) -> bool {
        self.relations().iter().all(|(_, ok)| *ok)
    }
}

/// The irreducible module `L_n` on the basis `v_0, ..., v_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Action {
    pub n: u32,
    pub rep: Sl2Module,
}

/// `L_n`: `E v_i = i v_{i-1}`, `F v_i = (n-i) v_{i+1}`, `H v_i = (n-2i) v_i`.
pub fn build_ln(n: u32) -> Sl2Action {
    let dim = n as usize + 1;
    let mut e = RepMatrix::zeros(dim, dim);
    let mut f = RepMatrix::zeros(dim, dim);
    let mut h = RepMatrix::zeros(dim, dim);
    for i in 0..dim {
        if i >= 1 {
            e[(i - 1, i)] = Rational::from(i);
        }
        if i < n as usize {
            f[(i + 1, i)] = Rational::from(n as usize - i);
        }
        h[(i, i)] = Rational::from(n as i64 - 2 * i as i64);
    }
    let rep = Sl2Module::from_generators(e, f, h).expect("square matrices of equal size");
    Sl2Action { n, rep }
}

/// `EF + FE + H^2/2`.
pub fn casimir_matrix(e: &RepMatrix, f: &RepMatrix, h: &RepMatrix) -> Result<RepMatrix> {
    let n = e.rows();
    if [e, f, h].iter().any(|m| !m.is_square() || m.rows() != n) {
        return Err(Error::ShapeMismatch("Casimir needs square E, F, H of equal size".into()));
    }
    let ef = e * f;
    let fe = f * e;
    let h2 = (h * h).scale(&q(1, 2));
    Ok(&(&ef + &fe) + &h2)
}

/// The scalar `n(n+2)/2` by which `Λ` acts on `L_n`.
pub fn casimir_scalar(n: u32) -> Rational {
    let n = i64::from(n);
    q(n * (n + 2), 2)
}

/// A tensor product of two U(sl2)-modules, as a module over U(sl2) (x) U(sl2)
/// and, through the comultiplication, over U(sl2).
///
/// Basis order is `v_i (x) w_j` at index `i * dim(right) + j`.
#[derive(Clone, Debug)]
pub struct TensorRep {
    /// Highest weights `(m, n)` when both factors are irreducible `L_m`, `L_n`.
    pub weights: Option<(u32, u32)>,
    pub dims: (usize, usize),
    pub de: RepMatrix,
    pub df: RepMatrix,
    pub dh: RepMatrix,
    pub dlambda: RepMatrix,
    /// `X (x) 1`.
    pub left: Sl2Module,
    /// `1 (x) X`.
    pub right: Sl2Module,
}

impl TensorRep {
    pub fn from_modules(a: &Sl2Module, b: &Sl2Module) -> Self {
        let ia = RepMatrix::identity(a.dim());
        let ib = RepMatrix::identity(b.dim());
        let lift_left = |x: &RepMatrix| kron(x, &ib);
        let lift_right = |x: &RepMatrix| kron(&ia, x);
        let left =
            Sl2Module { e: lift_left(&a.e), f: lift_left(&a.f), h: lift_left(&a.h), lambda: lift_left(&a.lambda) };
        let right =
            Sl2Module { e: lift_right(&b.e), f: lift_right(&b.f), h: lift_right(&b.h), lambda: lift_right(&b.lambda) };
        let de = &left.e + &right.e;
        let df = &left.f + &right.f;
        let dh = &left.h + &right.h;
        let dlambda = casimir_matrix(&de, &df, &dh).expect("square");
        let rep = TensorRep { weights: None, dims: (a.dim(), b.dim()), de, df, dh, dlambda, left, right };
        assert_eq!(rep.dlambda, rep.casimir_expansion(), "the coproduct of the Casimir must match its expansion");
        rep
    }

    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    /// The image of `U(sl2)` under the comultiplication, as a module.
    pub fn diagonal(&self) -> Sl2Module {
        Sl2Module { e: self.de.clone(), f: self.df.clone(), h: self.dh.clone(), lambda: self.dlambda.clone() }
    }

    /// `X (x) Y` as the product `(X (x) 1)(1 (x) Y)`.
    fn pure(x_left: &RepMatrix, y_right: &RepMatrix) -> RepMatrix {
        x_left * y_right
    }

    /// `Λ(x)1 + 1(x)Λ + H(x)H + 2(E(x)F + F(x)E)`.
    pub fn casimir_expansion(&self) -> RepMatrix {
        let (l, r) = (&self.left, &self.right);
        let hh = Self::pure(&l.h, &r.h);
        let ef = Self::pure(&l.e, &r.f);
        let fe = Self::pure(&l.f, &r.e);
        let cross = (&ef + &fe).scale(&q(2, 1));
        &(&(&l.lambda + &r.lambda) + &hh) + &cross
    }

    /// The five commutator identities satisfied by `Δ(Λ)` in
    /// U(sl2) (x) U(sl2), evaluated on this module.
    pub fn coproduct_identities(&self) -> Vec<(&'static str, bool)> {
        let (l, r) = (&self.left, &self.right);
        let n = self.dim();
        let two = RepMatrix::scalar(n, q(2, 1));
        let ef = Self::pure(&l.e, &r.f);
        let fe = Self::pure(&l.f, &r.e);
        let comm = |x: &RepMatrix| commutator(&self.dlambda, x).expect("square");

        let id1 = self.dlambda == self.casimir_expansion();
        let id2 = comm(&r.h).scale(&q(1, 4)) == &ef - &fe;
        let id3 = comm(&l.h).scale(&q(1, 4)) == &fe - &ef;

        let rhs4 = {
            let shift = &(&r.h - &l.h) - &two;
            let h_ef = Self::pure(&l.h, &(&r.e * &r.f));
            let ef_h = Self::pure(&(&l.e * &l.f), &r.h);
            &(&(&ef * &shift) - &h_ef) + &ef_h
        };
        let id4 = comm(&ef).scale(&q(1, 2)) == rhs4;

        let rhs5 = {
            let shift = &(&l.h - &r.h) - &two;
            let h_fe = Self::pure(&l.h, &(&r.f * &r.e));
            let fe_h = Self::pure(&(&l.f * &l.e), &r.h);
            &(&(&fe * &shift) + &h_fe) - &fe_h
        };
        let id5 = comm(&fe).scale(&q(1, 2)) == rhs5;

        vec![
            ("Δ(Λ)=Λ⊗1+1⊗Λ+H⊗H+2(E⊗F+F⊗E)", id1),
            ("[Δ(Λ),1⊗H]/4=E⊗F-F⊗E", id2),
            ("[Δ(Λ),H⊗1]/4=F⊗E-E⊗F", id3),
            ("[Δ(Λ),E⊗F]/2=(E⊗F)(1⊗H-H⊗1-2)-H⊗EF+EF⊗H", id4),
            ("[Δ(Λ),F⊗E]/2=(F⊗E)(H⊗1-1⊗H-2)+H⊗FE-FE⊗H", id5),
        ]
    }

    /// Whether `Δ(Λ)` commutes with `Δ(E)`, `Δ(F)`, `Δ(H)`.
    pub fn casimir_is_central(&self) -> bool {
        [&self.de, &self.df, &self.dh].iter().all(|x| commutator(&self.dlambda, x).expect("square").is_zero())
    }

    /// Coordinates of the basis vectors of weight `theta`. `Δ(H)` is
    /// diagonal on the product basis, so every weight space is a coordinate
    /// subspace.
    pub fn weight_coordinates(&self, theta: &Rational) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.dh[(i, i)] == theta).collect()
    }
}

/// `L_m (x) L_n`.
pub fn build_tensor_rep(m: u32, n: u32) -> TensorRep {
    let mut rep = TensorRep::from_modules(&build_ln(m).rep, &build_ln(n).rep);
    rep.weights = Some((m, n));
    rep
}

/// Echelon basis of the `Δ(H)`-eigenspace for `theta`.
pub fn weight_space(rep: &TensorRep, theta: &Rational) -> Vec<Vec<Rational>> {
    eigenspace_basis(&rep.dh, theta).expect("square")
}

/// Highest weights `m+n, m+n-2, ..., |m-n|` of the summands of `L_m (x) L_n`.
///
/// The list is confirmed against the actual spectrum of `Δ(Λ)`: the summand
/// `L_w` contributes eigenvalue `w(w+2)/2` with multiplicity `w+1`, and those
/// multiplicities must exhaust the space.
pub fn clebsch_gordan_summands(m: u32, n: u32) -> Result<Vec<u32>> {
    let summands: Vec<u32> = (0..=m.min(n)).map(|p| m + n - 2 * p).collect();
    let rep = build_tensor_rep(m, n);
    let mut total = 0;
    for &w in &summands {
        let found = eigenspace_basis(&rep.dlambda, &casimir_scalar(w))?.len();
        if found != w as usize + 1 {
            return Err(Error::CrossCheck(format!(
                "L_{m} (x) L_{n}: Casimir eigenvalue {} has multiplicity {found}, expected {}",
                casimir_scalar(w),
                w + 1
            )));
        }
        total += found;
    }
    if total != rep.dim() {
        return Err(Error::CrossCheck(format!(
            "L_{m} (x) L_{n}: predicted eigenspaces cover {total} of {} dimensions",
            rep.dim()
        )));
    }
    Ok(summands)
}
