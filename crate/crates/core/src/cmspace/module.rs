use super::linsys::{LinSys, Term};
use super::CmError;
use crate::exact::{Mat, Rational};

/// Finite-dimensional module over the one-point extension `B = A[ℐ]` with
/// `ℐ` trivial: a vector space `V` with commuting actions of the coordinate
/// generators, a vector space `V_∞`, and the structure map
/// `φ: V_∞ → V` (the image of `1 ⊗ V_∞`).
#[derive(Clone, PartialEq, Debug)]
pub struct BModule {
    pub n: usize,
    pub n_inf: usize,
    pub actions: Vec<Mat<Rational>>,
    /// `n × n_inf`.
    pub phi: Mat<Rational>,
}

impl BModule {
    pub fn new(n: usize, n_inf: usize, actions: Vec<Mat<Rational>>, phi: Mat<Rational>) -> Result<Self, CmError> {
        for a in &actions {
            if (a.rows(), a.cols()) != (n, n) {
                return Err(CmError::Size(format!("action is {}x{}, expected {n}x{n}", a.rows(), a.cols())));
            }
        }
        if (phi.rows(), phi.cols()) != (n, n_inf) {
            return Err(CmError::Size(format!("phi is {}x{}, expected {n}x{n_inf}", phi.rows(), phi.cols())));
        }
        Ok(BModule { n, n_inf, actions, phi })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.n_inf)
    }
}

fn check_same_generators(u: &BModule, v: &BModule) -> Result<(), CmError> {
    if u.actions.len() != v.actions.len() {
        return Err(CmError::Size("modules over different numbers of generators".into()));
    }
    Ok(())
}

/// `dim Hom_A(U, V)`: maps `f: U → V` intertwining every action.
pub fn hom_a_dim(u: &BModule, v: &BModule) -> Result<usize, CmError> {
    check_same_generators(u, v)?;
    let mut sys = LinSys::new(&[(v.n, u.n)]);
    let iv = Mat::identity(v.n);
    let iu = Mat::identity(u.n);
    for (au, av) in u.actions.iter().zip(&v.actions) {
        sys.equation(&[
            Term { block: 0, left: &iv, right: au, negate: false },
            Term { block: 0, left: av, right: &iu, negate: true },
        ]);
    }
    Ok(sys.nullity())
}

/// `dim Hom_B(U, V)`: pairs `(f, f_∞)` with `f` an `A`-map and
/// `f·φ_U = φ_V·f_∞`.
pub fn hom_dim(u: &BModule, v: &BModule) -> Result<usize, CmError> {
    check_same_generators(u, v)?;
    let mut sys = LinSys::new(&[(v.n, u.n), (v.n_inf, u.n_inf)]);
    let iv = Mat::identity(v.n);
    let iu = Mat::identity(u.n);
    let iui = Mat::identity(u.n_inf);
    for (au, av) in u.actions.iter().zip(&v.actions) {
        sys.equation(&[
            Term { block: 0, left: &iv, right: au, negate: false },
            Term { block: 0, left: av, right: &iu, negate: true },
        ]);
    }
    sys.equation(&[
        Term { block: 0, left: &iv, right: &u.phi, negate: false },
        Term { block: 1, left: &v.phi, right: &iui, negate: true },
    ]);
    Ok(sys.nullity())
}

/// `dim Ext¹_B(U, V)` from the five-term exact sequence
/// `0 → Hom_B → Hom_A ⊕ Hom(U_∞, V_∞) → Hom(U_∞, Hom_A(ℐ, V)) → Ext¹_B → Ext¹_A → 0`,
/// with `Hom_A(ℐ, V) ≅ V` and `dim Ext¹_A = dim Hom_A` for finite-dimensional
/// modules over a smooth curve.
pub fn ext1_dim(u: &BModule, v: &BModule) -> Result<usize, CmError> {
    let hom_b = hom_dim(u, v)?;
    let hom_a = hom_a_dim(u, v)?;
    let ext1_a = hom_a;
    let middle = hom_a + u.n_inf * v.n_inf;
    let image = middle - hom_b;
    Ok(ext1_a + u.n_inf * v.n - image)
}

/// `dim U_∞ · (dim V_∞ − dim V)`.
pub fn euler_char(u: &BModule, v: &BModule) -> i64 {
    u.n_inf as i64 * (v.n_inf as i64 - v.n as i64)
}

/// Necessary condition `λ·n + λ_∞·n_∞ = 0` for a module of dimension
/// `(n, n_∞)` to lift to the deformed preprojective algebra of weight
/// `(λ, λ_∞)`.
pub fn trace_lift_check(m: &BModule, weight: (Rational, Rational)) -> bool {
    let (l, li) = weight;
    let total = l * Rational::from_integer(m.n.into()) + li * Rational::from_integer(m.n_inf.into());
    total == Rational::from_integer(0.into())
}

/// A module over the deformed preprojective algebra, forgetting relations:
/// actions of `x`, (`y`), `z` on `V`, the maps `v̂ᵢ: V_∞ → V` and
/// `ŵᵢ: V → V_∞`.
#[derive(Clone, PartialEq, Debug)]
pub struct PiModule {
    pub n: usize,
    pub n_inf: usize,
    pub actions: Vec<Mat<Rational>>,
    /// `n × n_inf` each.
    pub vs: Vec<Mat<Rational>>,
    /// `n_inf × n` each.
    pub ws: Vec<Mat<Rational>>,
}

impl PiModule {
    pub fn direct_sum(&self, o: &Self) -> Self {
        let zip = |a: &[Mat<Rational>], b: &[Mat<Rational>]| -> Vec<Mat<Rational>> {
            a.iter().zip(b).map(|(p, q)| p.direct_sum(q)).collect()
        };
        PiModule {
            n: self.n + o.n,
            n_inf: self.n_inf + o.n_inf,
            actions: zip(&self.actions, &o.actions),
            vs: zip(&self.vs, &o.vs),
            ws: zip(&self.ws, &o.ws),
        }
    }

    /// Dimension of the algebra of endomorphisms `diag(A, C)` of `V ⊕ V_∞`
    /// commuting with every generator.
    pub fn commutant_dim(&self) -> usize {
        let mut sys = LinSys::new(&[(self.n, self.n), (self.n_inf, self.n_inf)]);
        let i = Mat::identity(self.n);
        let ii = Mat::identity(self.n_inf);
        for a in &self.actions {
            sys.equation(&[
                Term { block: 0, left: &i, right: a, negate: false },
                Term { block: 0, left: a, right: &i, negate: true },
            ]);
        }
        for v in &self.vs {
            sys.equation(&[
                Term { block: 0, left: &i, right: v, negate: false },
                Term { block: 1, left: v, right: &ii, negate: true },
            ]);
        }
        for w in &self.ws {
            sys.equation(&[
                Term { block: 1, left: &ii, right: w, negate: false },
                Term { block: 0, left: w, right: &i, negate: true },
            ]);
        }
        sys.nullity()
    }
}
