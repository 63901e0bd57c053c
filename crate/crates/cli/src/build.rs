//! Evaluation of declarations into rings, homs, ideals, modules and amalgamations.

use std::collections::HashMap;

use amalgam_core::amalgam::{subring_image_plus, Amalgamation};
use amalgam_core::group::AdditiveGroup;
use amalgam_core::spectrum::{self, LocalRing};
use amalgam_core::{trivial_extension, FiniteRing, Ideal, ModuleQuotient, ModuleSpec, RingHom, Submodule};

use crate::dsl::{Call, SpecFile, Value};

/// Failures while building are plain messages; they end up in report records.
pub type BuildResult<T> = Result<T, String>;

#[derive(Clone, Debug)]
pub enum Object {
    Ring(FiniteRing),
    Hom(RingHom),
    Ideal(FiniteRing, Ideal),
    /// `⊕ R/I_k`.
    Module(FiniteRing, Vec<Ideal>),
    Amalgam { f: RingHom, j: Ideal, built: BuildResult<Box<Amalgamation>> },
}

impl Object {
    pub fn ring(&self) -> BuildResult<&FiniteRing> {
        match self {
            Object::Ring(r) => Ok(r),
            Object::Amalgam { built: Ok(a), .. } => Ok(&a.ring),
            Object::Amalgam { built: Err(e), .. } => Err(e.clone()),
            _ => Err("not a ring".into()),
        }
    }

    /// The object viewed as a finite module `num/den` over its ring.
    pub fn module(&self) -> BuildResult<(FiniteRing, ModuleQuotient)> {
        match self {
            Object::Ideal(r, i) => Ok((r.clone(), ModuleQuotient::of_submodule(r, i.clone()))),
            Object::Module(r, ideals) => {
                let mut den = Submodule::zero(r, 0);
                for i in ideals {
                    den = den.direct_sum(r, i).map_err(|e| e.to_string())?;
                }
                Ok((r.clone(), ModuleQuotient::cokernel(r, den)))
            }
            _ => Err("not a module".into()),
        }
    }

    fn module_spec(&self) -> BuildResult<(FiniteRing, ModuleSpec)> {
        match self {
            Object::Ideal(r, i) => Ok((r.clone(), ModuleSpec::from_ideal(r, i).map_err(|e| e.to_string())?)),
            Object::Module(r, ideals) => {
                let mut acc: Option<ModuleSpec> = None;
                for i in ideals {
                    let q = ModuleSpec::quotient_of_ring(r, i).map_err(|e| e.to_string())?;
                    acc = Some(match acc {
                        None => q,
                        Some(a) => ModuleSpec::direct_sum(r, &a, &q).map_err(|e| e.to_string())?,
                    });
                }
                let m = acc.ok_or("empty module")?;
                Ok((r.clone(), m))
            }
            _ => Err("not a module".into()),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Object::Ring(_) => "ring",
            Object::Hom(_) => "hom",
            Object::Ideal(..) => "ideal",
            Object::Module(..) => "module",
            Object::Amalgam { .. } => "amalgamation",
        }
    }
}

/// All declared objects, in declaration order.
#[derive(Debug, Default)]
pub struct Env {
    pub order: Vec<String>,
    pub objects: HashMap<String, BuildResult<Object>>,
}

impl Env {
    pub fn get(&self, name: &str) -> BuildResult<&Object> {
        match self.objects.get(name) {
            Some(Ok(o)) => Ok(o),
            Some(Err(_)) => Err(format!("depends on failed declaration `{name}`")),
            None => Err(format!("unknown name `{name}`")),
        }
    }

    /// Declarations that failed to build, with their messages.
    pub fn failures(&self) -> Vec<(&str, &str)> {
        self.order
            .iter()
            .filter_map(|n| match &self.objects[n] {
                Err(e) => Some((n.as_str(), e.as_str())),
                Ok(_) => None,
            })
            .collect()
    }

    /// Basis labels of a declared ring, for annotating serialized files.
    pub fn basis_comment(&self, name: &str) -> Option<String> {
        let r = self.get(name).ok()?;
        let ring = match r {
            Object::Ring(r) => r,
            Object::Amalgam { built: Ok(a), .. } => &a.ring,
            _ => return None,
        };
        Some(format!("basis of {name}: {}", ring.labels().join(", ")))
    }
}

pub fn build(file: &SpecFile) -> Env {
    let mut env = Env::default();
    for (name, call) in file.declarations() {
        let obj = eval_call(&env, call);
        env.order.push(name.to_string());
        env.objects.insert(name.to_string(), obj);
    }
    env
}

// ---------------------------------------------------------------- value helpers

pub fn int(v: &Value) -> BuildResult<i64> {
    match v {
        Value::Int(n, _) => Ok(*n),
        _ => Err("expected an integer".into()),
    }
}

pub fn uint(v: &Value, what: &str) -> BuildResult<u64> {
    let n = int(v)?;
    u64::try_from(n).map_err(|_| format!("{what} must be non-negative"))
}

pub fn vector(v: &Value) -> BuildResult<Vec<i64>> {
    match v {
        Value::List(items, _) => items.iter().map(int).collect(),
        _ => Err("expected a vector".into()),
    }
}

pub fn matrix(v: &Value) -> BuildResult<Vec<Vec<i64>>> {
    match v {
        Value::List(items, _) => items.iter().map(vector).collect(),
        _ => Err("expected a list of vectors".into()),
    }
}

fn tensor(v: &Value) -> BuildResult<Vec<Vec<Vec<i64>>>> {
    match v {
        Value::List(items, _) => items.iter().map(matrix).collect(),
        _ => Err("expected a list of matrices".into()),
    }
}

/// Coordinates reduced into `r`, rejecting the wrong length.
pub fn element(r: &FiniteRing, v: &[i64]) -> BuildResult<Vec<u64>> {
    if v.len() != r.dim() {
        return Err(format!("vector has {} coordinates, the ring has {}", v.len(), r.dim()));
    }
    let n = r.modulus() as i64;
    let coords: Vec<u64> = v.iter().map(|x| x.rem_euclid(n) as u64).collect();
    r.element(&coords).map_err(|e| e.to_string())
}

/// A vector of `R^p` given as `p·dim R` coordinates.
pub fn free_vector(r: &FiniteRing, p: usize, v: &[i64]) -> BuildResult<Vec<u64>> {
    if v.len() != p * r.dim() {
        return Err(format!("vector has {} coordinates, expected {}", v.len(), p * r.dim()));
    }
    let mut out = Vec::with_capacity(v.len());
    for chunk in v.chunks(r.dim().max(1)) {
        out.extend(element(r, chunk)?);
    }
    Ok(out)
}

pub fn eval(env: &Env, v: &Value) -> BuildResult<Object> {
    match v {
        Value::Name(n, _) => env.get(n).cloned(),
        Value::Call(c) => eval_call(env, c),
        _ => Err("expected an object".into()),
    }
}

fn ring_arg(env: &Env, v: &Value) -> BuildResult<FiniteRing> {
    eval(env, v)?.ring().cloned()
}

fn hom_arg(env: &Env, v: &Value) -> BuildResult<RingHom> {
    match eval(env, v)? {
        Object::Hom(h) => Ok(h),
        o => Err(format!("expected a hom, found a {}", o.kind_name())),
    }
}

fn ideal_arg(env: &Env, v: &Value) -> BuildResult<(FiniteRing, Ideal)> {
    match eval(env, v)? {
        Object::Ideal(r, i) => Ok((r, i)),
        o => Err(format!("expected an ideal, found a {}", o.kind_name())),
    }
}

/// An ideal that must live in `r`.
fn ideal_of(env: &Env, v: &Value, r: &FiniteRing, role: &str) -> BuildResult<Ideal> {
    let (owner, i) = ideal_arg(env, v)?;
    if owner != *r {
        return Err(format!("the ideal is not an ideal of the {role}"));
    }
    Ok(i)
}

fn modules(env: &Env, v: &Value) -> BuildResult<(FiniteRing, Vec<Ideal>)> {
    match eval(env, v)? {
        Object::Module(r, is) => Ok((r, is)),
        Object::Ideal(..) => Err("module_sum and module_power take quotient modules".into()),
        o => Err(format!("expected a module, found a {}", o.kind_name())),
    }
}

fn eval_call(env: &Env, c: &Call) -> BuildResult<Object> {
    let a: Vec<&Value> = c.positional().collect();
    let err = |e: amalgam_core::Error| e.to_string();
    Ok(match c.func.as_str() {
        "zmod" => Object::Ring(FiniteRing::zmod(uint(a[0], "the modulus")?).map_err(err)?),
        "truncated_poly" => {
            let t = usize::try_from(int(a[1])?).map_err(|_| "t must be non-negative")?;
            Object::Ring(FiniteRing::truncated_poly(uint(a[0], "the modulus")?, t).map_err(err)?)
        }
        "product" => Object::Ring(FiniteRing::product(&ring_arg(env, a[0])?, &ring_arg(env, a[1])?).map_err(err)?),
        "power" => {
            let k = usize::try_from(int(a[1])?).map_err(|_| "the exponent must be non-negative")?;
            Object::Ring(FiniteRing::power(&ring_arg(env, a[0])?, k).map_err(err)?)
        }
        "quotient" => {
            let r = ring_arg(env, a[0])?;
            let i = ideal_of(env, a[1], &r, "ring")?;
            Object::Ring(r.quotient(&i).map_err(err)?.0)
        }
        "trivial_ext" => {
            let r = ring_arg(env, a[0])?;
            let (owner, m) = eval(env, a[1])?.module_spec()?;
            if owner != r {
                return Err("the module is over a different ring".into());
            }
            Object::Ring(trivial_extension(&r, &m).map_err(err)?)
        }
        "table" => {
            let n = uint(a[0], "the modulus")?;
            let t = tensor(a[1])?;
            let d = t.len();
            let group = AdditiveGroup::free(n, d).map_err(err)?;
            let red = |x: &i64| x.rem_euclid(n.max(1) as i64) as u64;
            let mut entries = Vec::with_capacity(d * d);
            for row in &t {
                if row.len() != d {
                    return Err(format!("table rows must have {d} entries"));
                }
                for e in row {
                    entries.push(e.iter().map(red).collect());
                }
            }
            let one = vector(a[2])?.iter().map(red).collect();
            Object::Ring(FiniteRing::from_table(group, entries, one, Vec::new()).map_err(err)?)
        }
        "subring_image_plus" => {
            let f = hom_arg(env, a[0])?;
            let j = ideal_of(env, a[1], f.target(), "target of the hom")?;
            Object::Ring(subring_image_plus(&f, &j).map_err(err)?.0)
        }
        "ideal" => {
            let r = ring_arg(env, a[0])?;
            let gens = matrix(a[1])?.iter().map(|g| element(&r, g)).collect::<BuildResult<Vec<_>>>()?;
            let i = Submodule::ideal(&r, &gens).map_err(err)?;
            Object::Ideal(r, i)
        }
        "maximal_ideal" => {
            let r = ring_arg(env, a[0])?;
            let l = LocalRing::new(&r).map_err(err)?;
            let m = l.maximal().clone();
            Object::Ideal(r, m)
        }
        "nilradical" => {
            let r = ring_arg(env, a[0])?;
            let n = spectrum::nilradical(&r);
            Object::Ideal(r, n)
        }
        "hom" => {
            let s = ring_arg(env, a[0])?;
            let t = ring_arg(env, a[1])?;
            let images = matrix(a[2])?.iter().map(|g| element(&t, g)).collect::<BuildResult<Vec<_>>>()?;
            Object::Hom(RingHom::new(s, t, images).map_err(err)?)
        }
        "projection" => {
            let r = ring_arg(env, a[0])?;
            let i = ideal_of(env, a[1], &r, "ring")?;
            Object::Hom(r.quotient(&i).map_err(err)?.1)
        }
        "inclusion" => {
            let f = hom_arg(env, a[0])?;
            let j = ideal_of(env, a[1], f.target(), "target of the hom")?;
            Object::Hom(subring_image_plus(&f, &j).map_err(err)?.1)
        }
        "identity" => Object::Hom(RingHom::identity(&ring_arg(env, a[0])?)),
        "module_quotient" => {
            let r = ring_arg(env, a[0])?;
            let i = ideal_of(env, a[1], &r, "ring")?;
            Object::Module(r, vec![i])
        }
        "module_sum" => {
            let (r, mut x) = modules(env, a[0])?;
            let (s, y) = modules(env, a[1])?;
            if r != s {
                return Err("the modules are over different rings".into());
            }
            x.extend(y);
            Object::Module(r, x)
        }
        "module_power" => {
            let (r, x) = modules(env, a[0])?;
            let k = usize::try_from(int(a[1])?).map_err(|_| "the exponent must be non-negative")?;
            if k == 0 {
                return Err("the exponent must be at least 1".into());
            }
            Object::Module(r, x.iter().cloned().cycle().take(k * x.len()).collect())
        }
        "amalgamation" => {
            let f = hom_arg(env, a[0])?;
            let j = ideal_of(env, a[1], f.target(), "target of the hom")?;
            let built = Amalgamation::new(&f, &j).map(Box::new).map_err(err);
            Object::Amalgam { f, j, built }
        }
        "duplication" => {
            let r = ring_arg(env, a[0])?;
            let i = ideal_of(env, a[1], &r, "ring")?;
            let f = RingHom::identity(&r);
            let built = Amalgamation::duplication(&r, &i).map(Box::new).map_err(err);
            Object::Amalgam { f, j: i, built }
        }
        other => return Err(format!("unknown constructor `{other}`")),
    })
}
