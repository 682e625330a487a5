//! The shipped instances and modules, regenerated from the built-in generators.

use crate::bimonad::WeakBraidedBimonad;
use crate::error::{Error, Result};
use crate::exactmat::{Mat, Rational};
use crate::hopf::build_pipeline;
use crate::hopfmodules::{induced_hopf_module, k_omega, BaseModule, MixedBimodule};
use crate::instances::{
    cyclic_group, groupoid_algebra, idempotent_monoid, instance_to_string, module_to_string, super_line, GroupoidSpec,
};
use crate::report::pin_expected;
use crate::tensorexpr::TensorMap;

/// Attach a freshly computed expected-results block.
pub fn pinned(mut b: WeakBraidedBimonad) -> Result<WeakBraidedBimonad> {
    b.expected = Some(pin_expected(&b)?);
    Ok(b)
}

/// `g2`, `k2`, `z2`, `sl`, `nz`, unpinned.
pub fn standard_instances() -> Result<Vec<WeakBraidedBimonad>> {
    Ok(vec![
        groupoid_algebra(&GroupoidSpec::full(2))?,
        groupoid_algebra(&GroupoidSpec::discrete(2))?,
        cyclic_group(2)?,
        super_line(),
        idempotent_monoid(),
    ])
}

pub fn standard_instance(name: &str) -> Result<WeakBraidedBimonad> {
    standard_instances()?
        .into_iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::InvalidSpec(format!("no standard instance named {name:?}")))
}

/// The one-dimensional base module on which the first basis vector of the base
/// acts by 1 and all others by 0. Fails if that is not a module structure.
pub fn point_base_module(b: &WeakBraidedBimonad) -> Result<BaseModule> {
    let base = build_pipeline(b)?.base;
    let r = base.r;
    let g = Mat::from_fn(1, r, |_, c| if c == 0 { Rational::from_integer(1.into()) } else { Rational::from_integer(0.into()) });
    BaseModule::new(r, 1, TensorMap::new(vec![r, 1], vec![1], g)?)
}

/// `H⊗_B N` for the point module `N` of [`point_base_module`].
pub fn induced_point_module(b: &WeakBraidedBimonad) -> Result<MixedBimodule> {
    let p = build_pipeline(b)?;
    let nm = point_base_module(b)?;
    crate::hopfmodules::check_base_module(&p.base, &nm).holds.then_some(()).ok_or_else(|| {
        Error::PrerequisiteAxiomFailed("basemod.module".into())
    })?;
    Ok(induced_hopf_module(b, &p.base, &nm)?.0)
}

/// A shipped file: its name, the instance it belongs to (for modules), and its text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShippedFile {
    pub file: String,
    pub instance: String,
    pub text: String,
}

/// Every shipped instance (with expected blocks) and module file.
pub fn shipped_files() -> Result<Vec<ShippedFile>> {
    let mut out = Vec::new();
    for b in standard_instances()? {
        let name = b.name.clone();
        out.push(ShippedFile { file: format!("{name}.instance"), instance: name, text: instance_to_string(&pinned(b)?) });
    }
    let module = |file: &str, instance: &str, mb: MixedBimodule| ShippedFile {
        file: file.into(),
        instance: instance.into(),
        text: module_to_string(&mb),
    };
    for name in ["g2", "k2", "z2", "sl"] {
        let b = standard_instance(name)?;
        out.push(module(&format!("{name}_komega1.module"), name, k_omega(&b, 1)?));
    }
    let g2 = standard_instance("g2")?;
    out.push(module("g2_komega2.module", "g2", k_omega(&g2, 2)?));
    out.push(module("g2_point.module", "g2", induced_point_module(&g2)?));
    Ok(out)
}
