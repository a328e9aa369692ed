use std::path::Path;

use num_traits::{Signed, ToPrimitive};
use serde::Deserialize;
use setmax_core::construct::{
    build_tight_dependency, build_tight_supermodular, graph_to_uniform_instance, random_bidders,
    random_graph, random_instance, random_matching, reduce_kdm, welfare_to_instance, Instance, MatchingInput,
    RandomConstraint,
};
use setmax_core::format;
use setmax_core::value::{self, Value};
use setmax_core::HypergraphFunction;

use crate::cli::{
    ConstraintKind, GenArgs, Generator, GraphArgs, KdmArgs, RandomArgs, TightArgs, WelfareArgs,
};
use crate::{emit, CliError, CliResult};

pub fn run(args: GenArgs) -> CliResult<()> {
    let inst = build(&args.generator)?;
    emit(args.output.as_deref(), &format::to_json(&inst))?;
    if let Some(path) = &args.output {
        eprintln!(
            "wrote {} instance with n = {} to {}",
            inst.meta.construction,
            inst.n(),
            path.display()
        );
    }
    Ok(())
}

pub fn build(generator: &Generator) -> CliResult<Instance> {
    Ok(match generator {
        Generator::TightSupermodular(a) => tight(a, build_tight_supermodular)?,
        Generator::TightDependency(a) => tight(a, build_tight_dependency)?,
        Generator::Kdm(a) => kdm(a)?,
        Generator::Welfare(a) => welfare(a)?,
        Generator::GraphUniform(a) => graph(a)?,
        Generator::Random(a) => random(a)?,
    })
}

type TightBuilder = fn(usize, usize, Value) -> setmax_core::Result<setmax_core::construct::TightInstance>;

fn tight(a: &TightArgs, builder: TightBuilder) -> CliResult<Instance> {
    let eps = value::parse_positive(&a.eps)?;
    Ok(builder(a.k, a.d, eps)?.instance)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::io(path, e))
}

fn kdm(a: &KdmArgs) -> CliResult<Instance> {
    let input: MatchingInput = match &a.input {
        Some(path) => read_json(path)?,
        None => random_matching(a.sides, a.side_size, a.edges, a.seed)?,
    };
    let mut inst = reduce_kdm(&input.side_sizes, &input.edges, a.k, a.d)?;
    if a.input.is_none() {
        inst.meta.seed = Some(a.seed);
    }
    Ok(inst)
}

fn welfare(a: &WelfareArgs) -> CliResult<Instance> {
    let bidders: Vec<HypergraphFunction> = match &a.input {
        Some(path) => read_json(path)?,
        None => random_bidders(a.bidders, a.items, a.seed)?,
    };
    let mut inst = welfare_to_instance(&bidders)?;
    if a.input.is_none() {
        inst.meta.seed = Some(a.seed);
    }
    Ok(inst)
}

#[derive(Deserialize)]
struct GraphInput {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// Splits a probability in `[0, 1]` into a `u32` fraction.
pub(crate) fn probability(text: &str) -> CliResult<(u32, u32)> {
    let p = value::parse(text)?;
    let bad = || CliError::Usage(format!("probability {text} must be a fraction in [0, 1]"));
    if p.is_negative() || p > value::one() {
        return Err(bad());
    }
    let num = p.numer().to_u32().ok_or_else(bad)?;
    let den = p.denom().to_u32().ok_or_else(bad)?;
    Ok((num, den))
}

fn graph(a: &GraphArgs) -> CliResult<Instance> {
    let delta = value::parse(&a.delta)?;
    let input = match &a.input {
        Some(path) => read_json(path)?,
        None => {
            let (num, den) = probability(&a.p)?;
            GraphInput {
                vertices: a.vertices,
                edges: random_graph(a.vertices, num, den, a.seed)?,
            }
        }
    };
    let mut inst = graph_to_uniform_instance(input.vertices, &input.edges, &delta)?;
    if a.input.is_none() {
        inst.meta.seed = Some(a.seed);
        inst.meta.params.insert("p".into(), a.p.clone().into());
    }
    Ok(inst)
}

fn random(a: &RandomArgs) -> CliResult<Instance> {
    let constraint = match a.constraint {
        ConstraintKind::Uniform => RandomConstraint::Uniform {
            k: a.k.unwrap_or(a.n / 2),
        },
        ConstraintKind::Partition => RandomConstraint::Partition { parts: a.parts },
        ConstraintKind::Intersection => RandomConstraint::Intersection { parts: a.parts },
    };
    Ok(random_instance(a.n, a.d, constraint, a.seed)?)
}
