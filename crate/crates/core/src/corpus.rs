//! Small named instances used by the command line tests and benchmarks.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::action::{global_action, restrict_global, Partial, PartialAction, PartialGModule};
use crate::algebra::{cyclic_group_algebra, matrix_units, validate_grading_by_ids, GradedAlgebra};
use crate::finalg::{FiniteCommMonoid, FiniteCommRing};
use crate::groupoid::{matrix, one_object_group, pair, FiniteGroupoid};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn z(n: usize) -> FiniteCommRing {
    FiniteCommRing::zmod(n)
}

fn power(n: usize, k: usize) -> FiniteCommRing {
    let r = z(n);
    FiniteCommRing::product(&vec![&r; k])
}

fn swap_name(name: &str) -> String {
    let inner = &name[1..name.len() - 1];
    let (a, b) = inner.split_once(',').expect("pair name");
    format!("({b},{a})")
}

/// Cyclic shift of a coordinate tuple name `(a,b,c,...)` by `k` places.
fn shift_name(name: &str, k: usize) -> String {
    let inner = &name[1..name.len() - 1];
    let mut parts: Vec<&str> = inner.split(',').collect();
    let n = parts.len();
    parts.rotate_right(k % n);
    format!("({})", parts.join(","))
}

fn group_arc(m: usize) -> Arc<FiniteGroupoid> {
    Arc::new(one_object_group(m).expect("group order is positive"))
}

/// Power of the generator a morphism id of `one_object_group` stands for.
fn exponent(id: &str) -> usize {
    match id {
        "e" => 0,
        "g" => 1,
        s => s.trim_start_matches("g^").parse().expect("id of the form g^k"),
    }
}

fn swap_action<M: crate::action::Component + 'static>(b: M) -> Partial<M> {
    let g = group_arc(2);
    let bb = b.clone();
    global_action(g, vec![b], move |m, x| if m == 0 { x } else { bb.index(&swap_name(bb.name(x))).unwrap() }).expect("swap is an action")
}

fn shift_action<M: crate::action::Component + 'static>(b: M, order: usize) -> Partial<M> {
    let g = group_arc(order);
    let gg = g.clone();
    let bb = b.clone();
    global_action(g, vec![b], move |m, x| bb.index(&shift_name(bb.name(x), exponent(gg.id(m)))).unwrap()).expect("shift is an action")
}

fn two_objects() -> Arc<FiniteGroupoid> {
    Arc::new(pair(&names(&["1", "2"])).expect("pair groupoid"))
}

fn pairs(v: &[(&str, &str)]) -> Vec<[String; 2]> {
    v.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect()
}

/// Partial actions on rings, global and partial.
pub fn skew_actions() -> Vec<(String, PartialAction)> {
    let mut out = Vec::new();
    let mut add = |name: &str, a: PartialAction| out.push((name.to_string(), a));
    add("terminal on F5", global_action(group_arc(1), vec![z(5)], |_, x| x).unwrap());
    add("trivial Z2 on F3", global_action(group_arc(2), vec![z(3)], |_, x| x).unwrap());
    add("swap Z2 on F3^2", swap_action(power(3, 2)));
    let swap2 = swap_action(power(2, 2));
    add("swap Z2 on F2^2", swap2.clone());
    let u = power(2, 2).index("(1,0)").unwrap();
    add("swap Z2 on F2^2 restricted to (1,0)", restrict_global(&swap2, u).unwrap());
    let idem = BTreeMap::from([("g".to_string(), "(1,0)".to_string())]);
    let theta = BTreeMap::from([("g".to_string(), pairs(&[("(0,0)", "(0,0)"), ("(1,0)", "(1,0)")]))]);
    add("partial Z2 on F2^2", Partial::from_named(group_arc(2), vec![power(2, 2)], &idem, &theta).unwrap());
    let shift = shift_action(power(2, 3), 3);
    add("shift Z3 on F2^3", shift.clone());
    let r = power(2, 3);
    add("shift Z3 on F2^3 restricted to (1,0,0)", restrict_global(&shift, r.index("(1,0,0)").unwrap()).unwrap());
    add("shift Z3 on F2^3 restricted to (1,1,0)", restrict_global(&shift, r.index("(1,1,0)").unwrap()).unwrap());
    add("pair groupoid on F2, F2", global_action(two_objects(), vec![z(2), z(2)], |_, x| x).unwrap());
    let g = two_objects();
    let gg = g.clone();
    let b = power(3, 2);
    let bb = b.clone();
    add(
        "pair groupoid swapping F3^2",
        global_action(g, vec![b.clone(), b], move |m, x| {
            if gg.is_identity(m) {
                x
            } else {
                bb.index(&swap_name(bb.name(x))).unwrap()
            }
        })
        .unwrap(),
    );
    let idem = BTreeMap::from([("(1,2)".to_string(), "(1,0)".to_string())]);
    let theta = BTreeMap::from([
        ("(1,2)".to_string(), pairs(&[("0", "(0,0)"), ("1", "(1,0)")])),
        ("(2,1)".to_string(), pairs(&[("(0,0)", "0"), ("(1,0)", "1")])),
    ]);
    add("pair groupoid, F2^2 partially onto F2", Partial::from_named(two_objects(), vec![power(2, 2), z(2)], &idem, &theta).unwrap());
    out
}

/// Partial modules with at most six morphisms and nine elements.
pub fn modules() -> Vec<(String, PartialGModule)> {
    let m = |r: FiniteCommRing| -> FiniteCommMonoid { r.multiplicative() };
    let mut out = Vec::new();
    let mut add = |name: &str, a: PartialGModule| out.push((name.to_string(), a));
    add("trivial Z2 on Z3", global_action(group_arc(2), vec![m(z(3))], |_, x| x).unwrap());
    let idem = BTreeMap::from([("g".to_string(), "(1,0)".to_string())]);
    let theta = BTreeMap::from([("g".to_string(), pairs(&[("(0,0)", "(0,0)"), ("(1,0)", "(1,0)"), ("(2,0)", "(2,0)")]))]);
    add("partial Z2 on Z3^2", Partial::from_named(group_arc(2), vec![m(power(3, 2))], &idem, &theta).unwrap());
    add("swap Z2 on Z3^2", swap_action(m(power(3, 2))));
    let shift = shift_action(m(power(2, 3)), 3);
    add("shift Z3 on F2^3", shift.clone());
    let r = power(2, 3);
    add("shift Z3 on F2^3 restricted to (1,1,0)", restrict_global(&shift, r.index("(1,1,0)").unwrap()).unwrap());
    add("pair groupoid on Z3, Z3", global_action(two_objects(), vec![m(z(3)), m(z(3))], |_, x| x).unwrap());
    add("trivial Z6 on Z9", global_action(group_arc(6), vec![m(z(9))], |_, x| x).unwrap());
    let z9 = z(9);
    // inversion on units, identity on non-units
    let inv = move |x: usize| if x % 3 == 0 { x } else { (1..9).find(|&y| (x * y) % 9 == 1).unwrap() };
    add("inversion Z2 on Z9", global_action(group_arc(2), vec![z9.multiplicative()], move |g, x| if g == 0 { x } else { inv(x) }).unwrap());
    out
}

/// `F_p[Z_m]` graded by `Z_m`.
pub fn group_algebra(p: u32, m: usize) -> GradedAlgebra {
    let alg = cyclic_group_algebra(p, m).expect("prime p");
    let ids: Vec<String> = (0..m).map(|i| match i {
        0 => "e".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{i}"),
    }).collect();
    validate_grading_by_ids(alg, group_arc(m), &ids).expect("natural grading")
}

/// `M_2(F_2)` graded by `matrix({1,2}, 4)` with the four matrix units at
/// `(1,e,1)`, `(1,g,2)`, `(2,g^3,1)` and `(2,e,2)`.
pub fn morita_truncation() -> GradedAlgebra {
    let alg = matrix_units(2).expect("p = 2");
    let g = Arc::new(matrix(&names(&["1", "2"]), 4).expect("matrix groupoid"));
    validate_grading_by_ids(alg, g, &names(&["(1,e,1)", "(1,g,2)", "(2,g^3,1)", "(2,e,2)"])).expect("grading")
}
