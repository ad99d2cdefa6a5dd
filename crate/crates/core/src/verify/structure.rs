//! Checks about bipartite graphs, their side stabilizers and attached
//! graphs, plus the tensor product connectivity rule.

use super::{big, random_products, Analyzed, VerifyReport, PRODUCT_SAMPLES};
use crate::auteng::{automorphism_group, restrict};
use crate::graph::{tensor_product, Bipartition, Graph};
use crate::grassmann::{perp_on, SubspaceGraph};
use crate::perm::{PermGroup, Permutation};

fn side_of(bip: &Bipartition, n: usize) -> Vec<u8> {
    let mut side = vec![0u8; n];
    for &w in &bip.w {
        side[w] = 1;
    }
    side
}

/// `Some(side)` if `p` maps all of `U` into one side.
fn side_action(p: &Permutation, bip: &Bipartition, side: &[u8]) -> Option<u8> {
    let first = side[p.apply(*bip.u.first()?)];
    bip.u.iter().all(|&u| side[p.apply(u)] == first).then_some(first)
}

/// The bipartition of a connected bipartite graph; `Err` names what fails.
fn connected_bipartite(a: &Analyzed) -> Result<&Bipartition, String> {
    if !a.graph().is_connected() {
        return Err("graph is not connected".into());
    }
    a.bipartition().ok_or_else(|| "graph is not bipartite".into())
}

fn connected_bipartite_vd(a: &Analyzed) -> Result<&Bipartition, String> {
    let bip = connected_bipartite(a)?;
    if let Some((v, w)) = a.graph().vd_witness() {
        return Err(format!("graph is not vertex-determining: N({v}) = N({w})"));
    }
    Ok(bip)
}

/// Checks that `part` is, as a set, one side of `bip`.
fn as_side(bip: &Bipartition, part: &[usize]) -> Result<(), String> {
    let mut sorted = part.to_vec();
    sorted.sort_unstable();
    if sorted == bip.u || sorted == bip.w {
        Ok(())
    } else {
        Err("the given part is not a side of the bipartition".into())
    }
}

pub fn check_vd(a: &Analyzed) -> VerifyReport {
    let mut r = VerifyReport::new(
        "vertex-determining",
        a.instance(),
        "distinct vertices have distinct neighbourhoods",
    );
    if let Some((v, w)) = a.graph().vd_witness() {
        r.refute(format!("vertices {v} and {w} have the same neighbourhood"));
    }
    r
}

pub fn check_bipartition_behavior(a: &Analyzed) -> VerifyReport {
    let r = VerifyReport::new(
        "bipartition-behavior",
        a.instance(),
        "every automorphism of a connected bipartite graph fixes both sides or swaps them",
    );
    let bip = match connected_bipartite(a) {
        Ok(b) => b,
        Err(reason) => return r.not_applicable(reason),
    };
    let group = a.aut();
    let side = side_of(bip, a.graph().n());
    let mut r = r.with("aut_order", group.order().to_string());
    let mut swapping = 0;
    for g in group.generators() {
        match side_action(g, bip, &side) {
            Some(1) => swapping += 1,
            Some(_) => {}
            None => r.refute(format!("generator {g} splits a side")),
        }
    }
    let products = random_products(group, PRODUCT_SAMPLES);
    for p in &products {
        if side_action(p, bip, &side).is_none() {
            r.refute(format!("product {p} splits a side"));
        }
    }
    r.with("generators", group.generators().len())
        .with("side_swapping_generators", swapping)
        .with("products_checked", products.len())
}

pub fn check_pointwise_fix(a: &Analyzed) -> VerifyReport {
    let r = VerifyReport::new(
        "pointwise-fix",
        a.instance(),
        "in a connected bipartite vd-graph, an automorphism fixing one side pointwise is the identity",
    );
    let bip = match connected_bipartite_vd(a) {
        Ok(b) => b,
        Err(reason) => return r.not_applicable(reason),
    };
    let mut r = r;
    for (name, part) in [("u", &bip.u), ("w", &bip.w)] {
        let stab = a.aut().pointwise_stabilizer(part).expect("side lies inside the vertex set");
        r.note(&format!("stabilizer_order_{name}"), stab.order().to_string());
        if let Some(g) = stab.generators().iter().find(|g| !g.is_identity()) {
            r.refute(format!("{g} fixes side {name} pointwise"));
        }
    }
    r
}

struct Attachment {
    report: VerifyReport,
    stabilizer: Option<PermGroup>,
    attached_order: Option<num_bigint::BigUint>,
}

fn attachment(a: &Analyzed, part: &[usize], g1: &Graph) -> Attachment {
    let r = VerifyReport::new(
        "attached-graph",
        a.instance(),
        "automorphisms of the side graph extend uniquely, and side-stabilizing automorphisms restrict to it",
    );
    let fail = |report| Attachment { report, stabilizer: None, attached_order: None };
    let bip = match connected_bipartite_vd(a) {
        Ok(b) => b,
        Err(reason) => return fail(r.not_applicable(reason)),
    };
    if let Err(reason) = as_side(bip, part) {
        return fail(r.not_applicable(reason));
    }
    if g1.n() != part.len() {
        return fail(r.not_applicable(format!("side graph has {} vertices, part has {}", g1.n(), part.len())));
    }
    let group = a.aut();
    let mut r = r.with("aut_order", group.order().to_string());
    let stab = match group.part_stabilizer(part) {
        Ok(s) => s,
        Err(e) => {
            r.refute(e.to_string());
            return fail(r);
        }
    };
    let a1 = automorphism_group(g1);
    let mut restricted = Vec::new();
    for s in stab.generators() {
        let h = restrict(s, part).expect("stabilizer elements preserve the part");
        if !g1.is_automorphism(h.images()) {
            r.refute(format!("restriction of {s} to the part is {h}, not an automorphism of the side graph"));
        }
        restricted.push(h);
    }
    let kernel = stab.pointwise_stabilizer(part).expect("part lies inside the vertex set");
    if let Some(g) = kernel.generators().iter().find(|g| !g.is_identity()) {
        r.refute(format!("restriction is not injective: {g} restricts to the identity"));
    }
    let image = PermGroup::from_generators(part.len(), restricted).expect("restrictions share a degree");
    if image.order() != a1.order() {
        r.refute(format!(
            "restriction is not onto: image order {} but the side graph has {} automorphisms",
            image.order(),
            a1.order()
        ));
    }
    let report = r
        .with("stabilizer_order", stab.order().to_string())
        .with("kernel_order", kernel.order().to_string())
        .with("image_order", image.order().to_string())
        .with("side_graph_aut_order", a1.order().to_string());
    Attachment {
        report,
        stabilizer: Some(stab),
        attached_order: Some(a1.order().clone()),
    }
}

/// `g1` is a graph on `part`, vertex `i` standing for `part[i]`.
pub fn check_attached(a: &Analyzed, part: &[usize], g1: &Graph) -> VerifyReport {
    attachment(a, part, g1).report
}

pub fn check_s_u_isomorphism(a: &Analyzed, part: &[usize], g1: &Graph) -> VerifyReport {
    let r = VerifyReport::new(
        "stabilizer-isomorphism",
        a.instance(),
        "the side stabilizer of an attached graph is isomorphic to the side graph's automorphism group",
    );
    let att = attachment(a, part, g1);
    let (Some(stab), Some(a1_order)) = (att.stabilizer, att.attached_order) else {
        return r.not_applicable("attachment hypotheses do not hold");
    };
    if !att.report.is_verified() {
        return r.not_applicable("attachment is not verified");
    }
    let mut r = r
        .with("stabilizer_order", stab.order().to_string())
        .with("side_graph_aut_order", a1_order.to_string());
    if *stab.order() != a1_order {
        r.refute(format!("orders differ: {} vs {}", stab.order(), a1_order));
    }
    let products = random_products(&stab, PRODUCT_SAMPLES);
    let restricted: Vec<Permutation> = products
        .iter()
        .map(|p| restrict(p, part).expect("stabilizer elements preserve the part"))
        .collect();
    for (i, (p, hp)) in products.iter().zip(&restricted).enumerate() {
        let (q, hq) = (&products[(i + 1) % products.len()], &restricted[(i + 1) % products.len()]);
        let composite = restrict(&p.after(q), part).expect("products preserve the part");
        if composite != hp.after(hq) {
            r.refute(format!("restriction is not multiplicative on {p} and {q}"));
        }
        if hp.is_identity() && !p.is_identity() {
            r.refute(format!("{p} restricts to the identity"));
        }
    }
    r.with("products_checked", products.len())
}

pub fn check_semidirect_structure(a: &Analyzed, part: &[usize], t: &Permutation) -> VerifyReport {
    let r = VerifyReport::new(
        "semidirect-structure",
        a.instance(),
        "an involutive side-swapping automorphism t gives Aut = S(U) extended by <t>",
    );
    let bip = match connected_bipartite(a) {
        Ok(b) => b,
        Err(reason) => return r.not_applicable(reason),
    };
    if let Err(reason) = as_side(bip, part) {
        return r.not_applicable(reason);
    }
    let n = a.graph().n();
    if t.degree() != n || !a.graph().is_automorphism(t.images()) {
        return r.not_applicable("t is not an automorphism of the graph");
    }
    if !t.after(t).is_identity() {
        return r.not_applicable("t is not an involution");
    }
    let side = side_of(bip, n);
    let part_side = side[part[0]];
    if part.iter().any(|&u| side[t.apply(u)] == part_side) {
        return r.not_applicable("t does not move the part onto the other side");
    }
    let group = a.aut();
    let stab = group.part_stabilizer(part).expect("automorphisms respect the sides");
    let mut r = r
        .with("aut_order", group.order().to_string())
        .with("stabilizer_order", stab.order().to_string());
    if *group.order() != stab.order() * big(2) {
        r.refute(format!("|Aut| = {} but 2|S(U)| = {}", group.order(), stab.order() * big(2)));
    }
    if stab.contains(t).expect("degrees agree") {
        r.refute(format!("t = {t} lies in S(U)"));
    }
    let mut gens = stab.generators().to_vec();
    gens.push(t.clone());
    let joined = PermGroup::from_generators(n, gens).expect("degrees agree");
    if joined.order() != group.order() {
        r.refute(format!("<S(U), t> has order {}, Aut has {}", joined.order(), group.order()));
    }
    let commuting = stab.commutes_with(t).expect("degrees agree");
    r.with("generated_order", joined.order().to_string())
        .with("direct_product", commuting)
}

pub fn weichsel_check(g1: &Graph, g2: &Graph, instance: &str) -> VerifyReport {
    let r = VerifyReport::new(
        "weichsel",
        instance,
        "the tensor product of connected graphs is connected if a factor has an odd cycle, else it has two components",
    );
    for (name, g) in [("first", g1), ("second", g2)] {
        if !g.is_connected() || g.edge_count() == 0 {
            return r.not_applicable(format!("{name} factor is not a connected graph with an edge"));
        }
    }
    let expected = if g1.has_odd_cycle() || g2.has_odd_cycle() { 1 } else { 2 };
    let components = tensor_product(g1, g2).component_count();
    let mut r = r.with("components", components).with("expected_components", expected);
    if components != expected {
        r.refute(format!("{components} components, expected {expected}"));
    }
    r
}

/// `θ(v) = v⊥` is an involutive automorphism; on doubled graphs it swaps
/// the sides.
pub fn check_perp_automorphism(sg: &SubspaceGraph, instance: &str) -> VerifyReport {
    let r = VerifyReport::new(
        "perp-automorphism",
        instance,
        "orthogonal complement is an involutive automorphism",
    );
    let (n, k) = (sg.ambient_dim(), sg.k());
    let applicable = if sg.is_doubled() { n == 2 * k + 1 } else { n == 2 * k };
    if !applicable {
        return r.not_applicable("complements do not stay inside the vertex set");
    }
    let mut r = r;
    match perp_on(sg) {
        Ok(t) => {
            if !t.after(&t).is_identity() {
                r.refute(format!("{t} is not an involution"));
            }
            if sg.is_doubled() {
                let low = sg.first_side_len();
                if let Some(v) = (0..low).find(|&v| t.apply(v) < low) {
                    r.refute(format!("vertex {v} stays on its side"));
                }
            }
            let order = PermGroup::from_generators(sg.graph.n(), vec![t]).expect("one generator");
            r.note("order", order.order().to_string());
        }
        Err(e) => r.refute(e.to_string()),
    }
    r
}
