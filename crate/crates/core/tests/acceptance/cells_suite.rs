use std::collections::{BTreeSet, HashMap};

use bcells::knuth;
use bcells::{CellKind, CellPartition, ElemId, Engine, Generator, KLTable, ParamSpec, Side, SignedPermutation, WeylGroup};

use crate::kl_suite::{chebyshev_route, id};
use crate::oracle::{self, compose, invert, length, product, s, Win};
use crate::{spec, Tally};

/// `(2r+1)/2` for `r ≤ 4` and `r/1` for `1 ≤ r ≤ 4`.
pub fn regime_specs() -> Vec<ParamSpec> {
    let open = (0..=4).map(|r| spec(2 * r + 1, 2));
    let wall = (1..=4).map(|r| spec(r, 1));
    open.chain(wall).collect()
}

struct Ctx<'a> {
    n: usize,
    sp: ParamSpec,
    g: &'a WeylGroup,
    table: &'a KLTable,
    elements: &'a [Win],
    index: &'a HashMap<Win, usize>,
}

impl Ctx<'_> {
    fn eid(&self, w: &[i32]) -> ElemId {
        id(self.g, w)
    }

    fn pos(&self, x: ElemId) -> usize {
        self.index[self.g.element(x).window()]
    }

    /// Out-neighbours in the generator graph, indexed like `elements`.
    fn adjacency(&self, side: Side) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .map(|w| {
                let y = self.eid(w);
                let mut out: Vec<usize> = self
                    .g
                    .generators()
                    .flat_map(|gen| self.table.c_multiply(gen, y, side))
                    .map(|(x, _)| self.pos(x))
                    .filter(|&x| self.elements[x] != *w)
                    .collect();
                out.sort();
                out.dedup();
                out
            })
            .collect()
    }

    fn blocks(&self, classes: BTreeSet<Vec<usize>>) -> BTreeSet<Vec<Win>> {
        classes
            .into_iter()
            .map(|b| b.into_iter().map(|i| self.elements[i].clone()).collect())
            .collect()
    }
}

fn window_blocks(p: &CellPartition) -> BTreeSet<Vec<Win>> {
    p.blocks()
        .iter()
        .map(|b| {
            let mut ws: Vec<Win> = b.iter().map(|w| w.window().to_vec()).collect();
            ws.sort();
            ws
        })
        .collect()
}

fn label_of(p: &CellPartition) -> HashMap<Win, usize> {
    p.labels().into_iter().map(|(w, l)| (w.window().to_vec(), l)).collect()
}

fn inverse_blocks(blocks: &BTreeSet<Vec<Win>>) -> BTreeSet<Vec<Win>> {
    blocks
        .iter()
        .map(|b| {
            let mut ws: Vec<Win> = b.iter().map(|w| invert(w)).collect();
            ws.sort();
            ws
        })
        .collect()
}

pub fn cell_statements(engine: &Engine, t: &mut Tally) -> bcells::Result<()> {
    let mut tallies: Vec<(&str, usize)> = Vec::new();
    for n in 1..=4usize {
        let g = engine.group(n)?;
        let elements = oracle::signed_permutations(n);
        let index: HashMap<Win, usize> =
            elements.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        star_domain_statements(n, &elements, t);
        relation_definitions(n, &elements, t);
        for sp in regime_specs() {
            let table = engine.full_table(n, sp)?;
            let ctx = Ctx { n, sp, g: &g, table: &table, elements: &elements, index: &index };
            let left = engine.kl_cells(n, sp, CellKind::Left)?;
            let right = engine.kl_cells(n, sp, CellKind::Right)?;
            let lab = label_of(&left);
            duality(&ctx, &left, &right, t);
            star_invariance(&ctx, &lab, t);
            kl_edge_statement(&ctx, &lab, t);
            young_statements(&ctx, &lab, t);
            if n >= 2 && sp.cmp_ratio(n as u64 - 2, 1).is_gt() && sp.cmp_ratio(n as u64 - 1, 1).is_le() {
                wall_edges(&ctx, t);
                tallies.push(("wall edge", n));
            }
            if n >= 2 && sp.cmp_ratio(n as u64 - 1, 1).is_le() {
                sign_flip(&ctx, &lab, t);
            }
            relation_edges(&ctx, &label_of(&right), t);
        }
    }
    let wall: BTreeSet<usize> = tallies.iter().map(|(_, n)| *n).collect();
    t.note(format!("wall-interval edge statement checked for n in {wall:?}"));
    Ok(())
}

fn duality(ctx: &Ctx, left: &CellPartition, right: &CellPartition, t: &mut Tally) {
    let (n, sp) = (ctx.n, ctx.sp);
    let l_ref = ctx.blocks(oracle::mutual_reachability(&ctx.adjacency(Side::Left)));
    let r_ref = ctx.blocks(oracle::mutual_reachability(&ctx.adjacency(Side::Right)));
    t.check(window_blocks(left) == l_ref, || format!("n={n} b/a={sp}: left cells differ from reachability classes"));
    t.check(window_blocks(right) == r_ref, || format!("n={n} b/a={sp}: right cells differ from reachability classes"));
    t.check(inverse_blocks(&l_ref) == r_ref, || {
        format!("n={n} b/a={sp}: inverted left cells are not the right cells")
    });
}

/// Right descents of `x` among `s_i, s_{i+1}`.
fn star_image(x: &[i32], i: usize) -> Option<Win> {
    let n = x.len();
    let desc = |w: &[i32], k: usize| w[k - 1] > w[k];
    let in_domain = |w: &[i32]| desc(w, i) != desc(w, i + 1);
    if !in_domain(x) {
        return None;
    }
    let mut found = [i, i + 1]
        .into_iter()
        .map(|k| compose(x, &s(k, n)))
        .filter(|w| in_domain(w));
    let y = found.next();
    assert!(found.next().is_none(), "two star images");
    y
}

fn star_domain_statements(n: usize, elements: &[Win], t: &mut Tally) {
    let tt = oracle::t(n);
    for i in 1..=n.saturating_sub(2) {
        for x in elements {
            let image = star_image(x, i);
            let lib = bcells::cells::star(&SignedPermutation::new(x.clone()).expect("valid"), i)
                .ok()
                .map(|w| w.window().to_vec());
            t.check(image == lib, || format!("n={n} i={i}: star image of {x:?}"));
            if let Some(y) = &image {
                t.check(star_image(y, i).as_deref() == Some(x.as_slice()), || {
                    format!("n={n} i={i}: star is not an involution at {x:?}")
                });
            }
            let tx = compose(&tt, x);
            let t_image = star_image(&tx, i);
            t.check(t_image == image.as_ref().map(|y| compose(&tt, y)), || {
                format!("n={n} i={i}: star commutes with left t at {x:?}")
            });
            if n >= 2 {
                for k in 1..n {
                    let up = length(&compose(x, &s(k, n))) > length(x);
                    let up_t = length(&compose(&tx, &s(k, n))) > length(&tx);
                    t.check(up == up_t, || format!("n={n}: s_{k} descent of {x:?} vs t x"));
                }
            }
        }
    }
}

fn star_invariance(ctx: &Ctx, lab: &HashMap<Win, usize>, t: &mut Tally) {
    let n = ctx.n;
    for i in 1..=n.saturating_sub(2) {
        let pairs: Vec<(usize, usize)> = ctx
            .elements
            .iter()
            .filter_map(|x| star_image(x, i).map(|y| (lab[x], lab[&y])))
            .collect();
        let mut bad = 0;
        for (a, a2) in &pairs {
            for (b, b2) in &pairs {
                if (a == b) != (a2 == b2) {
                    bad += 1;
                }
            }
        }
        t.check(bad == 0, || format!("n={n} b/a={} i={i}: {bad} pairs break star invariance", ctx.sp));
    }
}

fn kl_edge_statement(ctx: &Ctx, lab: &HashMap<Win, usize>, t: &mut Tally) {
    let n = ctx.n;
    for x in ctx.elements {
        for i in 1..n {
            for j in 1..n {
                let sx = compose(&s(i, n), x);
                let y = compose(&s(j, n), x);
                let sy = compose(&s(i, n), &y);
                let (lx, ly) = (length(x), length(&y));
                if length(&sx) < lx && lx < ly && ly < length(&sy) {
                    t.check(lab[x] == lab[&y], || {
                        format!("n={n} b/a={}: s_{i}x < x < s_{j}x < s_{i}s_{j}x but {x:?} not ~L {y:?}", ctx.sp)
                    });
                }
            }
        }
    }
}

fn young_minimal(l: usize, n: usize) -> Vec<Win> {
    oracle::permutations(n)
        .into_iter()
        .filter(|w| w[..l].windows(2).all(|p| p[0] < p[1]) && w[l..].windows(2).all(|p| p[0] < p[1]))
        .collect()
}

/// Left cells of `𝔖_{l,n-l}`, from the generators other than `s_l`.
fn young_cells(ctx: &Ctx, l: usize) -> Vec<Vec<Win>> {
    let n = ctx.n;
    let young = oracle::young_subgroup(l, n);
    let local: HashMap<&Win, usize> = young.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let adjacency: Vec<Vec<usize>> = young
        .iter()
        .map(|w| {
            let y = ctx.eid(w);
            (1..n)
                .filter(|&i| i != l)
                .flat_map(|i| ctx.table.c_multiply(Generator::S(i), y, Side::Left))
                .map(|(x, _)| local[&ctx.g.element(x).window().to_vec()])
                .filter(|&x| young[x] != *w)
                .collect()
        })
        .collect();
    oracle::mutual_reachability(&adjacency)
        .into_iter()
        .map(|b| b.into_iter().map(|i| young[i].clone()).collect())
        .collect()
}

fn young_statements(ctx: &Ctx, lab: &HashMap<Win, usize>, t: &mut Tally) {
    let (n, sp) = (ctx.n, ctx.sp);
    let asymptotic = sp.cmp_ratio(n as u64 - 1, 1).is_ge();
    for l in 0..=n {
        let cells = young_cells(ctx, l);
        let al = oracle::a(l, n);
        let minimal = young_minimal(l, n);
        // cells of the subgroup are the traces of the cells of W_n
        for cell in &cells {
            t.check(cell.iter().all(|w| lab[w] == lab[&cell[0]]), || {
                format!("n={n} b/a={sp} l={l}: a left cell of S_(l,n-l) splits in W_n")
            });
        }
        let labels: BTreeSet<usize> = cells.iter().map(|c| lab[&c[0]]).collect();
        t.check(labels.len() == cells.len(), || {
            format!("n={n} b/a={sp} l={l}: two left cells of S_(l,n-l) merge in W_n")
        });
        for cell in &cells {
            for beta in &minimal {
                let bi = invert(beta);
                let base = product(&[al.clone(), cell[0].clone(), bi.clone()]);
                for sigma in cell {
                    let w = product(&[al.clone(), sigma.clone(), bi.clone()]);
                    t.check(lab[&w] == lab[&base], || {
                        format!("n={n} b/a={sp}: a_l sigma beta^-1 separated for l={l}, sigma={sigma:?}, beta={beta:?}")
                    });
                    if asymptotic {
                        for alpha in &minimal {
                            let v = compose(alpha, &w);
                            t.check(lab[&v] == lab[&base], || {
                                format!("n={n} b/a={sp}: alpha a_l sigma beta^-1 separated for l={l}, alpha={alpha:?}, sigma={sigma:?}, beta={beta:?}")
                            });
                        }
                    }
                }
            }
        }
    }
}

fn wall_edges(ctx: &Ctx, t: &mut Tally) {
    let (n, sp) = (ctx.n, ctx.sp);
    let adjacency = ctx.adjacency(Side::Left);
    for l in 1..n {
        let sig = oracle::sigma_interval(l, n, n);
        let x = compose(&oracle::a(l - 1, n), &sig);
        let y = compose(&oracle::a(l, n), &sig);
        let coefficient = chebyshev_route(ctx.table, n, l, ctx.eid(&y))
            .get(&ctx.eid(&x))
            .cloned()
            .unwrap_or_default();
        t.check(!coefficient.is_zero(), || {
            format!("n={n} b/a={sp} l={l}: C_x has coefficient 0 in C_(n-1) C_y")
        });
        t.check(oracle::reaches(&adjacency, ctx.index[&y], ctx.index[&x]), || {
            format!("n={n} b/a={sp} l={l}: {x:?} not reachable from {y:?}")
        });
    }
}

fn sign_flip(ctx: &Ctx, lab: &HashMap<Win, usize>, t: &mut Tally) {
    let (n, sp) = (ctx.n, ctx.sp);
    let cycle: Vec<Win> = std::iter::once(oracle::identity(n)).chain((1..n).map(|i| s(i, n))).collect();
    let head = product(&cycle);
    for l in 1..=n {
        // β ∈ Y_{l-1,n-l} inside 𝔖_{n-1}
        let betas: Vec<Win> = young_minimal(l - 1, n)
            .into_iter()
            .filter(|b| b[n - 1] == n as i32)
            .collect();
        for beta in betas {
            let w = product(&[
                head.clone(),
                oracle::a(l - 1, n),
                oracle::sigma_interval(l, n - 1, n),
                invert(&beta),
            ]);
            let tw = compose(&oracle::t(n), &w);
            t.check(lab[&w] == lab[&tw], || {
                format!("n={n} b/a={sp} l={l}: {w:?} not ~L t w for beta={beta:?}")
            });
        }
    }
}

fn relation_definitions(n: usize, elements: &[Win], t: &mut Tally) {
    for w in elements {
        let lw = SignedPermutation::new(w.clone()).expect("valid");
        let lib = |v: Vec<SignedPermutation>| -> Vec<Win> { v.into_iter().map(|x| x.window().to_vec()).collect() };
        t.check(lib(knuth::smile1_neighbors(&lw)) == oracle::smile1(w), || {
            format!("n={n}: first relation at {w:?}")
        });
        for r in 0..=n + 1 {
            t.check(lib(knuth::smile2_neighbors(&lw, r)) == oracle::smile2(w, r), || {
                format!("n={n} r={r}: second relation at {w:?}")
            });
            let third = knuth::smile3_neighbor(&lw, r).map(|x| x.window().to_vec());
            t.check(third == oracle::smile3(w, r), || format!("n={n} r={r}: third relation at {w:?}"));
        }
    }
}

fn relation_edges(ctx: &Ctx, lab: &HashMap<Win, usize>, t: &mut Tally) {
    let (n, sp) = (ctx.n, ctx.sp);
    let second: Vec<usize> = (0..=n).filter(|&r| sp.cmp_ratio(r as u64, 1).is_ge()).collect();
    let third: Vec<usize> = (0..=n).filter(|&r| sp.cmp_ratio(r as u64 + 1, 1).is_le()).collect();
    for w in ctx.elements {
        for v in oracle::smile1(w) {
            t.check(lab[w] == lab[&v], || format!("n={n} b/a={sp}: first relation {w:?} -> {v:?} leaves the right cell"));
        }
        for &r in &second {
            for v in oracle::smile2(w, r) {
                t.check(lab[w] == lab[&v], || {
                    format!("n={n} b/a={sp}: second relation r={r} {w:?} -> {v:?} leaves the right cell")
                });
            }
        }
        for &r in &third {
            if let Some(v) = oracle::smile3(w, r) {
                t.check(lab[w] == lab[&v], || {
                    format!("n={n} b/a={sp}: third relation r={r} {w:?} -> {v:?} leaves the right cell")
                });
            }
        }
    }
}
