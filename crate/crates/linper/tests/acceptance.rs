//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! elapsed time against a pinned budget.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use linper::cli::run_with;
use linper::parse::{parse, print};
use linper::universe::builtin;
use linper_core::distinction::{shape_classify, Context, Decider, Decision, Parity, Shape};
use linper_core::enumerate::{crosscheck, ladders_on, Universe};
use linper_core::multiseg::{is_ladder, make_speh};
use linper_core::orbits::{enumerate_admissible, enumerate_orbits, involutions, AdmissibleDatum};
use linper_core::structure::{
    derivative, divisions, highest_derivative_speh, jacquet_ladder, mat_matrices, standard_module_kernel, KernelTerm,
};
use linper_core::{LadderRep, LineId, LineSet, Rat, Segment, SpehDatum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

const SEED: u64 = 0x6c69_6e70;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn half(rng: &mut StdRng) -> Rat {
    if rng.gen_bool(0.5) {
        Rat::HALF
    } else {
        Rat::ZERO
    }
}

fn random_ladder(rng: &mut StdRng, lines: &LineSet, max_h: usize, max_len: i64) -> LadderRep {
    let ids: Vec<LineId> = lines.ids().collect();
    let line = ids[rng.gen_range(0..ids.len())];
    let mut a = Rat::int(rng.gen_range(-5..=5)) + half(rng);
    let mut segs: Vec<Segment> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_h) {
        if !segs.is_empty() {
            a -= Rat::int(rng.gen_range(1..=3));
        }
        let mut b = a + (rng.gen_range(1..=max_len) - 1);
        if let Some(prev) = segs.last() {
            if b >= prev.b {
                b = prev.b - 1;
            }
        }
        segs.push(Segment::new(line, a, b).unwrap());
    }
    LadderRep::from_segments(segs).unwrap()
}

fn c1_duality() -> Check {
    let lines = builtin();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut lines_seen = HashSet::new();
    for _ in 0..1000 {
        let l = random_ladder(&mut rng, &lines, 5, 5);
        lines_seen.extend(l.line());
        let d = l.dual(&lines);
        ensure(is_ladder(d.multisegment()), || format!("dual of {} is not a ladder", l.display(&lines)))?;
        ensure(d.dual(&lines) == l, || format!("double dual of {} differs", l.display(&lines)))?;
        ensure(d.degree(&lines) == l.degree(&lines), || format!("degree changed for {}", l.display(&lines)))?;
    }
    ensure(lines_seen.len() == lines.len(), || "not every line was sampled".into())?;
    Ok("1000 random ladders".into())
}

fn grid_count(l: &LadderRep) -> usize {
    fn go(segs: &[Segment], i: usize, prev: Option<Rat>) -> usize {
        if i == segs.len() {
            return 1;
        }
        (0..=segs[i].len() as i64)
            .map(|j| segs[i].a - 1 + j)
            .filter(|&c| prev.is_none_or(|p| c < p))
            .map(|c| go(segs, i + 1, Some(c)))
            .sum()
    }
    go(l.segments(), 0, None)
}

fn c2_jacquet() -> Check {
    let lines = builtin();
    let u = Universe::new(lines.clone(), (Rat::int(-2), Rat::int(2)), 4, 4).unwrap();
    let mut corpus = Vec::new();
    for line in lines.ids() {
        for off in [Rat::ZERO, Rat::HALF] {
            corpus.extend(ladders_on(&u, line, off));
        }
    }
    let mut pairs_total = 0;
    for l in &corpus {
        let n = l.degree(&lines);
        let mut count = 0;
        for k in 0..=n {
            let pairs = jacquet_ladder(&lines, l, k);
            let distinct: HashSet<_> = pairs.iter().collect();
            ensure(distinct.len() == pairs.len(), || format!("repeated pair in {} at k={k}", l.display(&lines)))?;
            for (r, le) in &pairs {
                ensure(r.degree(&lines) == k && le.degree(&lines) == n - k, || {
                    format!("degrees off in {} at k={k}", l.display(&lines))
                })?;
            }
            count += pairs.len();
        }
        let grid = grid_count(l);
        ensure(count == grid && divisions(&lines, l, None).len() == grid, || {
            format!("{}: {count} pairs, {grid} grid divisions", l.display(&lines))
        })?;
        pairs_total += count;
    }
    Ok(format!("{} ladders, {pairs_total} pairs", corpus.len()))
}

fn c3_derivative() -> Check {
    let lines = builtin();
    let mut checked = 0;
    for line in lines.ids() {
        let d = lines.degree(line) as u64;
        for start in -2..=1 {
            for off in [Rat::ZERO, Rat::HALF] {
                for len in 1..=3i64 {
                    let a = Rat::int(start) + off;
                    let delta = Segment::new(line, a, a + (len - 1)).unwrap();
                    for k in 1..=4u32 {
                        let sp = SpehDatum::new(delta, k).unwrap();
                        let l = make_speh(&sp);
                        for order in 0..=l.degree(&lines) {
                            if order % d != 0 {
                                ensure(derivative(&lines, &l, order).unwrap().is_none(), || {
                                    format!("derivative {order} of {} present", sp.display(&lines))
                                })?;
                            }
                        }
                        let (shift, rest) = highest_derivative_speh(&sp);
                        let top = derivative(&lines, &l, delta.degree(&lines)).unwrap().unwrap().shift(shift);
                        let want = if k == 1 { LadderRep::empty() } else { make_speh(&SpehDatum::new(delta, k - 1).unwrap()) };
                        ensure(rest.map_or(LadderRep::empty(), |r| make_speh(&r)) == want && top == want, || {
                            format!("highest derivative of {}", sp.display(&lines))
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} Speh data"))
}

fn c4_orbits() -> Check {
    for k in 0..=8u32 {
        for p in 0..=8u32 {
            for q in 0..=8u32 {
                let mut brute = 0;
                for r in 0..=8u32 {
                    for s in 0..=8u32 {
                        brute += (r + s <= k && k <= p + s && k <= q + r) as usize;
                    }
                }
                let got = enumerate_orbits(k, p, q);
                ensure(got.len() == brute, || format!("orbits k={k} p={p} q={q}: {} vs {brute}", got.len()))?;
            }
        }
    }
    let mut comps: Vec<Vec<u32>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..4 {
        comps = comps.iter().flat_map(|c| (1..=3).map(move |x| [c.clone(), vec![x]].concat())).collect();
        all.extend(comps.iter().cloned());
    }
    let mut cases = 0;
    for nbar in &all {
        let t = nbar.len();
        let n: u32 = nbar.iter().sum();
        let perms = permutations(t);
        for p in 0..=n {
            let got: HashSet<AdmissibleDatum> = enumerate_admissible(nbar, p, n - p).unwrap().into_iter().collect();
            let mut brute = HashSet::new();
            for tau in &perms {
                if (0..t).any(|i| tau[tau[i]] != i || nbar[tau[i]] != nbar[i]) {
                    continue;
                }
                let fixed: Vec<usize> = (0..t).filter(|&i| tau[i] == i).collect();
                let paired: u32 = (0..t).filter(|&i| tau[i] > i).map(|i| nbar[i]).sum();
                let mut splits = vec![None; t];
                splits_brute(nbar, &fixed, 0, &mut splits, &mut |s| {
                    let plus: u32 = s.iter().flatten().map(|x| x.0).sum::<u32>() + paired;
                    let minus: u32 = s.iter().flatten().map(|x| x.1).sum::<u32>() + paired;
                    if plus == p && minus == n - p {
                        brute.insert(AdmissibleDatum { tau: tau.clone(), splits: s.to_vec() });
                    }
                });
            }
            ensure(got == brute, || format!("admissible {nbar:?} p={p}: {} vs {}", got.len(), brute.len()))?;
            cases += 1;
        }
        ensure(involutions(nbar).len() <= perms.len(), || "too many involutions".into())?;
    }
    Ok(format!("729 orbit triples, {cases} admissible cases"))
}

fn permutations(t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(t - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, t - 1);
            out.push(v);
        }
    }
    out
}

type Splits = [Option<(u32, u32)>];

fn splits_brute(nbar: &[u32], fixed: &[usize], i: usize, cur: &mut Splits, f: &mut dyn FnMut(&Splits)) {
    if i == fixed.len() {
        f(cur);
        return;
    }
    let k = fixed[i];
    for x in 0..=nbar[k] {
        cur[k] = Some((x, nbar[k] - x));
        splits_brute(nbar, fixed, i + 1, cur, f);
    }
    cur[k] = None;
}

fn c5_mat() -> Check {
    let mut margins: Vec<Vec<u32>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..3 {
        margins = margins.iter().flat_map(|c| (0..=3).map(move |x| [c.clone(), vec![x]].concat())).collect();
        all.extend(margins.iter().cloned());
    }
    let mut cases = 0;
    for a in &all {
        for b in &all {
            if a.iter().sum::<u32>() != b.iter().sum::<u32>() {
                continue;
            }
            let mut cols = b.clone();
            let brute = fill(a, &mut cols, 0, 0, a.first().copied().unwrap_or(0));
            let got = mat_matrices(a, b).map_err(|e| e.to_string())?;
            ensure(got.len() == brute, || format!("{a:?} {b:?}: {} vs {brute}", got.len()))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} margin pairs"))
}

fn fill(rows: &[u32], cols: &mut [u32], i: usize, j: usize, left: u32) -> usize {
    if i == rows.len() {
        return cols.iter().all(|&c| c == 0) as usize;
    }
    if j + 1 == cols.len() {
        if left > cols[j] {
            return 0;
        }
        cols[j] -= left;
        let n = fill(rows, cols, i + 1, 0, rows.get(i + 1).copied().unwrap_or(0));
        cols[j] += left;
        return n;
    }
    let mut n = 0;
    for x in 0..=left.min(cols[j]) {
        cols[j] -= x;
        n += fill(rows, cols, i, j + 1, left - x);
        cols[j] += x;
    }
    n
}

fn four_line_universe() -> Universe {
    Universe::new(builtin(), (Rat::int(-8), Rat::int(8)), 8, 8).unwrap()
}

fn c6_classification() -> Check {
    let u = four_line_universe();
    let mut summary = Vec::new();
    for parity in [Parity::OddExterior, Parity::OddSymmetric] {
        let dec = Decider::with_parity(&u.lines, parity);
        let r = crosscheck(&u, &dec, 8);
        ensure(r.discrepancies.is_empty(), || format!("{parity:?}: {} discrepancies", r.discrepancies.len()))?;
        let dist: usize = r.counts.iter().map(|c| c.distinguished).sum();
        summary.push(format!("{parity:?}: {} reps, {dist} distinguished", r.total()));
    }
    Ok(summary.join("; "))
}

fn c7_necessity() -> Check {
    let u = four_line_universe();
    let mut kernels = 0;
    let mut searched = 0;
    for parity in [Parity::OddExterior, Parity::OddSymmetric] {
        let dec = Decider::with_parity(&u.lines, parity);
        let r = crosscheck(&u, &dec, 8);
        ensure(r.search_failures.is_empty(), || {
            format!("{parity:?}: search rejects {}", r.search_failures[0].display(&u.lines))
        })?;
        searched += r.counts.iter().map(|c| c.distinguished).sum::<usize>();
        for line in u.lines.ids() {
            for len in 1..=3i64 {
                let h = Rat::new(len - 1, 2);
                let delta = Segment::new(line, -h, h).unwrap();
                if delta.degree(&u.lines) < 2 {
                    continue;
                }
                for k in 1..=4u32 {
                    let sp = SpehDatum::new(delta, k).unwrap();
                    let n = sp.degree(&u.lines);
                    if n % 2 == 1 {
                        continue;
                    }
                    let ctx = Context::untwisted((n / 2) as u32);
                    if dec.decide_ess_speh(&sp, ctx).unwrap() != Decision::Yes {
                        continue;
                    }
                    for (i, t) in standard_module_kernel(&make_speh(&sp)).iter().enumerate() {
                        if let KernelTerm::Factors(f) = t {
                            let v = dec.nec_search_segments(f, ctx).map_err(|e| e.to_string())?;
                            ensure(!v.possible, || format!("{parity:?}: K{} of {} passes", i + 1, sp.display(&u.lines)))?;
                            kernels += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{searched} distinguished products possible, {kernels} kernel factors impossible"))
}

fn c8_alternation() -> Check {
    let lines = builtin();
    let rho = lines.lookup("rho2").unwrap();
    for parity in [Parity::OddExterior, Parity::OddSymmetric] {
        let dec = Decider::with_parity(&lines, parity);
        let st = |l: i64| {
            let h = Rat::new(l - 1, 2);
            dec.is_dist_sqint(&Segment::new(rho, -h, h).unwrap(), Context::untwisted(l as u32)).unwrap()
        };
        for l in 1..=6 {
            ensure(st(l) != st(l + 1), || format!("{parity:?}: St(rho2,{l}) and St(rho2,{}) agree", l + 1))?;
        }
    }
    Ok("l = 1..6, both conventions".into())
}

fn shape_oracle(lines: &LineSet, x: &LadderRep) -> Shape {
    let segs = x.segments();
    let h = segs.len();
    let lens: Vec<u64> = segs.iter().map(|s| s.len()).collect();
    let last = segs[h - 1];
    let dual_to = |i: usize| lines.dual(last.line) == segs[i].line && -last.b == segs[i].a;
    let pattern = |i1: usize, i2: usize, i3: usize, m: u64| {
        let mut v = vec![1; i1];
        v.extend(std::iter::repeat_n(m, i2));
        v.extend(std::iter::repeat_n(m + 1, i3));
        v
    };
    if lens.iter().all(|&n| n == 1) {
        return Shape::Form1 { i1: h, i2: 0, i3: 0, l: 2 };
    }
    for i1 in 0..h {
        for i2 in 1..=h - i1 {
            for m in 2..=8 {
                if lens == pattern(i1, i2, h - i1 - i2, m) && dual_to(i1) {
                    return Shape::Form1 { i1, i2, i3: h - i1 - i2, l: m };
                }
            }
        }
    }
    for i1 in 1..h {
        if lens == pattern(i1, h - i1, 0, 2) && dual_to(0) {
            return Shape::Form2 { i1, i2: h - i1 };
        }
    }
    Shape::None
}

fn c9_shapes() -> Check {
    let lines = builtin();
    let triv = lines.lookup("triv").unwrap();
    let lad = |v: &[(i64, i64)]| {
        let segs = v.iter().map(|&(a, b)| Segment::new(triv, Rat::new(a, 2), Rat::new(b, 2)).unwrap()).collect();
        LadderRep::from_segments(segs).unwrap()
    };
    let fig1 = lad(&[(5, 5), (1, 3), (-3, 1), (-5, -1)]);
    let fig2 = lad(&[(3, 3), (1, 1), (-3, -1), (-5, -3)]);
    ensure(shape_classify(&lines, &fig1).unwrap() == (Shape::Form1 { i1: 1, i2: 1, i3: 2, l: 2 }), || "first figure".into())?;
    ensure(shape_classify(&lines, &fig2).unwrap() == (Shape::Form2 { i1: 2, i2: 2 }), || "second figure".into())?;
    let deg1: Vec<LineId> = lines.ids().filter(|&x| lines.degree(x) == 1).collect();
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let mut hits = [0usize; 3];
    for _ in 0..500 {
        let line = deg1[rng.gen_range(0..deg1.len())];
        let h = rng.gen_range(1..=6usize);
        let mut lens: Vec<i64> = (0..h).map(|_| rng.gen_range(1..=5)).collect();
        if rng.gen_bool(0.5) {
            let ones = rng.gen_range(0..h);
            let m = rng.gen_range(2..=3);
            for (i, x) in lens.iter_mut().enumerate() {
                *x = if i < ones { 1 } else if rng.gen_bool(0.7) { m } else { m + 1 };
            }
        }
        lens.sort();
        // Half the time, place the ladder so that the duality holds at a random index.
        let end = if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..h);
            Rat::new(h as i64 + i as i64 + lens[i] - 2, 2)
        } else {
            Rat::int(rng.gen_range(-4..=4)) + half(&mut rng)
        };
        let segs = lens
            .iter()
            .enumerate()
            .map(|(i, &n)| Segment::new(line, end - i as i64 - (n - 1), end - i as i64).unwrap())
            .collect();
        let x = LadderRep::from_segments(segs).unwrap();
        let got = shape_classify(&lines, &x).map_err(|e| e.to_string())?;
        ensure(got == shape_oracle(&lines, &x), || format!("{} classified as {got:?}", x.display(&lines)))?;
        hits[match got {
            Shape::Form1 { .. } => 0,
            Shape::Form2 { .. } => 1,
            Shape::None => 2,
        }] += 1;
    }
    ensure(hits.iter().all(|&h| h > 0), || format!("a class was never produced: {hits:?}"))?;
    Ok(format!("figures and 500 random ladders (form1 {}, form2 {}, none {})", hits[0], hits[1], hits[2]))
}

fn random_expr(rng: &mut StdRng, names: &[&str]) -> String {
    let sp = |rng: &mut StdRng| if rng.gen_bool(0.5) { " " } else { "" };
    let rat = |rng: &mut StdRng, x: Rat| {
        if rng.gen_bool(0.2) && !x.is_integer() {
            format!("{}/{}", x.numer() * 3, x.denom() * 3)
        } else {
            x.to_string()
        }
    };
    let seg = |rng: &mut StdRng, centered: bool, min_len: i64| {
        let name = names[rng.gen_range(0..names.len())];
        let len = rng.gen_range(min_len..=4i64);
        let a = if centered { Rat::new(1 - len, 2) } else { Rat::int(rng.gen_range(-4..=4)) + half(rng) };
        let b = a + (len - 1);
        format!("[{}{}{},{}{}]{}@{}", sp(rng), rat(rng, a), sp(rng), rat(rng, b), sp(rng), sp(rng), name)
    };
    if rng.gen_bool(0.1) {
        let p = rng.gen_range(0..5);
        return format!("({p},{}, {})", rng.gen_range(0..5), Rat::new(rng.gen_range(-3..=3), 2));
    }
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        if rng.gen_bool(0.5) {
            let alpha = rng.gen_bool(0.3);
            let s = seg(rng, alpha, 1);
            let k = rng.gen_range(1..=3);
            let tail = if alpha { format!("[{}]", ["1/4", "1/3", "2/5"][rng.gen_range(0..3)]) } else { String::new() };
            terms.push(format!("Sp({}{s},{}{k})", sp(rng), sp(rng)) + &tail);
        } else {
            let parts: Vec<String> = (0..rng.gen_range(1..=3)).map(|_| seg(rng, false, 0)).collect();
            terms.push(parts.join(&format!("{}+{}", sp(rng), sp(rng))));
        }
    }
    terms.join(" x ")
}

struct Example {
    args: Vec<String>,
    exit: i32,
    checks: Vec<(&'static str, Value)>,
    /// Expected values differ from the printed example; see the notes.
    corrected: bool,
}

fn ex(args: &[&str], checks: Vec<(&'static str, Value)>) -> Example {
    Example { args: args.iter().map(|s| s.to_string()).collect(), exit: 0, checks, corrected: false }
}

fn fails(args: &[&str], exit: i32) -> Example {
    Example { args: args.iter().map(|s| s.to_string()).collect(), exit, checks: vec![], corrected: false }
}

fn corrected(mut e: Example) -> Example {
    e.corrected = true;
    e
}

fn examples(dir: &std::path::Path) -> Vec<Example> {
    let write = |name: &str, ids: &[&str]| {
        let entries: Vec<_> = linper::universe::to_entries(&builtin()).into_iter().filter(|e| ids.contains(&e.id.as_str())).collect();
        let path = dir.join(name);
        std::fs::write(&path, serde_json::to_string(&entries).unwrap()).unwrap();
        path.to_string_lossy().into_owned()
    };
    let tr = write("tr.json", &["triv", "rho2"]);
    let pair = write("pair.json", &["chi", "chibar"]);
    let triv = write("triv.json", &["triv"]);
    let empty = write("empty.json", &[]);
    let s = |x: &str| json!(x);
    vec![
        ex(&["dual", "[3/2,3/2]@rho2"], vec![("/dual", s("[-3/2,-3/2]@rho2"))]),
        ex(&["dual", "[0,0]@chi"], vec![("/dual", s("[0,0]@chibar"))]),
        ex(&["dual", "[0,2]@rho2"], vec![("/dual", s("[-2,0]@rho2"))]),
        ex(&["dual", "[1,1]@chi"], vec![("/dual", s("[-1,-1]@chibar"))]),
        ex(&["dual", "[1,0]@rho2"], vec![("/dual", s("[0,-1]@rho2")), ("/multisegment/text", s("{}"))]),
        ex(&["shapes", "[0,1]@rho2 + [1,2]@rho2"], vec![("/linked", json!([[1, 2]])), ("/precedes", json!([[2, 1]]))]),
        ex(&["shapes", "[0,2]@rho2 + [1,1]@rho2"], vec![("/linked", json!([]))]),
        ex(&["shapes", "[0,1]@rho2 + [3,4]@rho2"], vec![("/linked", json!([])), ("/precedes", json!([]))]),
        ex(&["dual", "[1,2]@rho2 + [0,1]@rho2"], vec![("/dual", s("[-1,0]@rho2 + [-2,-1]@rho2"))]),
        ex(
            &["shapes", "[1,2]@rho2 + [0,1]@rho2"],
            vec![
                ("/standard_order/0/text", s("[1,2]@rho2")),
                ("/standard_order/1/text", s("[0,1]@rho2")),
                ("/ladder", json!(true)),
                ("/left_aligned", json!(true)),
                ("/right_aligned", json!(true)),
                ("/essentially_speh", json!(true)),
                ("/central_exponent", s("8")),
            ],
        ),
        ex(
            &["shapes", "[1,3]@rho2 + [0,1]@rho2"],
            vec![("/ladder", json!(true)), ("/left_aligned", json!(true)), ("/right_aligned", json!(false)), ("/essentially_speh", json!(false))],
        ),
        ex(&["shapes", "[0,1]@rho2 + [0,2]@rho2"], vec![("/ladder", json!(false))]),
        ex(&["speh", "Sp([0,1]@rho2,2)"], vec![("/ladders/0/text", s("[1/2,3/2]@rho2 + [-1/2,1/2]@rho2"))]),
        ex(&["speh", "Sp([0,1]@rho2,1)"], vec![("/ladders/0/text", s("[0,1]@rho2"))]),
        ex(&["speh", "Sp([0,0]@triv,3)"], vec![("/ladders/0/text", s("[1,1]@triv + [0,0]@triv + [-1,-1]@triv"))]),
        ex(&["shapes", "Sp([-1/2,1/2]@rho2,2)"], vec![("/self_dual", json!(true)), ("/central_exponent", s("0"))]),
        ex(&["shapes", "[0,1]@rho2"], vec![("/self_dual", json!(false))]),
        ex(&["shapes", "[0,0]@chi"], vec![("/self_dual", json!(false))]),
        ex(&["shapes", "[1,0]@triv"], vec![("/central_exponent", s("0")), ("/degree", json!(0))]),
        ex(
            &["divisions", "[1,2]@triv + [0,1]@triv"],
            vec![
                ("/count", json!(6)),
                ("/divisions/0/cuts", json!(["0", "-1"])),
                ("/divisions/1/cuts", json!(["1", "-1"])),
                ("/divisions/2/cuts", json!(["1", "0"])),
                ("/divisions/3/cuts", json!(["2", "-1"])),
                ("/divisions/4/cuts", json!(["2", "0"])),
                ("/divisions/5/cuts", json!(["2", "1"])),
            ],
        ),
        ex(
            &["divisions", "--k", "2", "[1,2]@triv + [0,1]@triv"],
            vec![("/count", json!(2)), ("/divisions/0/cuts", json!(["1", "0"])), ("/divisions/1/cuts", json!(["2", "-1"]))],
        ),
        ex(&["divisions", "--k", "0", "[1,2]@triv + [0,1]@triv"], vec![("/count", json!(1)), ("/divisions/0/cuts", json!(["2", "1"]))]),
        corrected(ex(
            &["jacquet", "--k", "2", "[1,2]@triv + [0,1]@triv"],
            vec![
                ("/pairs/0/right/text", s("[2,2]@triv + [1,1]@triv")),
                ("/pairs/0/left/text", s("[1,1]@triv + [0,0]@triv")),
                ("/pairs/1/right/text", s("[0,1]@triv")),
                ("/pairs/1/left/text", s("[1,2]@triv")),
            ],
        )),
        ex(
            &["jacquet", "--k", "4", "[1,2]@triv + [0,1]@triv"],
            vec![("/pairs/0/right/text", s("[1,2]@triv + [0,1]@triv")), ("/pairs/0/left/text", s("{}"))],
        ),
        ex(&["jacquet", "--k", "1", "[0,2]@triv"], vec![("/pairs/0/right/text", s("[2,2]@triv")), ("/pairs/0/left/text", s("[0,1]@triv"))]),
        ex(&["jacquet", "--k", "3", "[0,2]@rho2"], vec![("/pairs", json!([]))]),
        ex(&["jacquet", "--k", "0", "[0,2]@triv"], vec![("/pairs/0/right/text", s("{}")), ("/pairs/0/left/text", s("[0,2]@triv"))]),
        ex(&["mat", "--alpha", "1,1", "--beta", "1,1"], vec![("/count", json!(2))]),
        ex(&["mat", "--alpha", "2", "--beta", "1,1"], vec![("/matrices", json!([[[1, 1]]]))]),
        ex(&["mat", "--alpha", "1,1", "--beta", "2"], vec![("/count", json!(1))]),
        ex(&["derivative", "--k", "2", "Sp([0,1]@rho2,2)"], vec![("/derivative/text", s("[3/2,3/2]@rho2 + [-1/2,1/2]@rho2"))]),
        ex(&["derivative", "--k", "1", "Sp([0,1]@rho2,2)"], vec![("/derivative", Value::Null)]),
        ex(&["derivative", "--k", "0", "Sp([0,1]@rho2,2)"], vec![("/derivative/text", s("[1/2,3/2]@rho2 + [-1/2,1/2]@rho2"))]),
        corrected(ex(
            &["derivative", "--k", "4", "Sp([0,1]@rho2,3)"],
            vec![
                ("/highest_speh/shift", s("1/2")),
                ("/highest_speh/result/text", s("Sp([0,1]@rho2,2)")),
                ("/derivative/text", s("[0,1]@rho2 + [-1,0]@rho2")),
            ],
        )),
        ex(&["derivative", "--k", "2", "Sp([0,1]@rho2,1)"], vec![("/highest_speh/result", Value::Null)]),
        ex(&["kernel", "Sp([0,1]@rho2,2)"], vec![("/terms/0/text", s("[-1/2,3/2]@rho2 x [1/2,1/2]@rho2"))]),
        ex(&["kernel", "[3,4]@triv + [0,1]@triv"], vec![("/terms/0/zero", json!(true))]),
        ex(&["kernel", "[0,0]@triv"], vec![("/terms", json!([]))]),
        corrected(ex(&["commutes", "Sp([0,0]@triv,3) x [0,0]@triv"], vec![("/commutes", json!(false))])),
        ex(&["commutes", "Sp([0,0]@triv,1) x [1,1]@triv"], vec![("/commutes", json!(false))]),
        ex(&["commutes", "Sp([-2,0]@triv,1) x [1,1]@triv + [0,0]@triv"], vec![("/commutes", json!(true))]),
        ex(
            &["orbits", "--k", "1", "--p", "1", "--q", "1"],
            vec![("/orbits", json!([{"r":0,"s":0,"defect":1},{"r":1,"s":0,"defect":0},{"r":0,"s":1,"defect":0}]))],
        ),
        ex(&["orbits", "--k", "2", "--p", "1", "--q", "1"], vec![("/orbits", json!([{"r":1,"s":1,"defect":0}]))]),
        ex(&["orbits", "--k", "0", "--p", "2", "--q", "3"], vec![("/orbits", json!([{"r":0,"s":0,"defect":0}]))]),
        ex(&["admissible", "--nbar", "1,1", "--p", "1", "--q", "1"], vec![("/count", json!(3))]),
        ex(&["admissible", "--nbar", "2", "--p", "2", "--q", "0"], vec![("/count", json!(1)), ("/data/0/splits", json!([[2, 0]]))]),
        ex(&["admissible", "--nbar", "1,2", "--p", "1", "--q", "2"], vec![("/count", json!(2))]),
        ex(
            &["admissible", "--nbar", "1,1", "--p", "1", "--q", "1"],
            vec![
                ("/data/0/splits", json!([[1, 0], [0, 1]])),
                ("/data/0/exponents/0", json!({"block": "A1+", "exponent": "-1/2"})),
                ("/data/0/exponents/3", json!({"block": "A2-", "exponent": "1/2"})),
                ("/data/2/tau", json!([2, 1])),
                ("/data/2/exponents", json!([{"block": "A1", "exponent": "-1/2"}, {"block": "A2", "exponent": "1/2"}])),
            ],
        ),
        corrected(ex(
            &["orbits", "--k", "1", "--p", "1", "--q", "1", "--a", "0"],
            vec![("/orbits/1/first", json!({"p":1,"q":0,"a":"-1/2"})), ("/orbits/1/last", json!({"p":0,"q":1,"a":"-1/2"}))],
        )),
        ex(
            &["orbits", "--k", "2", "--p", "2", "--q", "2", "--a", "3/2"],
            vec![
                ("/orbits/0/last", json!({"p":0,"q":0,"a":"3/2"})),
                ("/orbits/0/middle_degree", json!(2)),
                ("/orbits/4/r", json!(1)),
                ("/orbits/4/s", json!(1)),
                ("/orbits/4/first/a", s("3/2")),
            ],
        ),
        ex(&["distinguished", "--p", "1", "--q", "1", "--a", "0", "Sp([0,0]@triv,2)"], vec![("/distinguished", json!(true))]),
        ex(&["distinguished", "--p", "3", "--q", "0", "--a", "1/2", "Sp([1/2,1/2]@triv,3)"], vec![("/distinguished", json!(true))]),
        ex(&["distinguished", "--p", "1", "--q", "1", "--a", "1/2", "Sp([0,0]@triv,2)"], vec![("/distinguished", json!(false))]),
        ex(&["distinguished", "--p", "1", "--q", "1", "--a", "0", "[0,0]@rho2"], vec![("/distinguished", json!(true))]),
        ex(&["distinguished", "--p", "2", "--q", "0", "--a", "0", "[0,0]@rho2"], vec![("/distinguished", json!(false))]),
        ex(&["distinguished", "--p", "1", "--q", "1", "--a", "0", "[0,1]@chi"], vec![("/distinguished", json!(false))]),
        ex(&["distinguished", "--p", "3", "--q", "3", "--a", "0", "Sp([0,0]@rho2,3)"], vec![("/distinguished", json!(true))]),
        ex(&["distinguished", "--p", "1", "--q", "1", "--a", "0", "Sp([0,0]@chi,2)"], vec![("/distinguished", json!(false))]),
        ex(&["distinguished", "--p", "4", "--q", "2", "--a", "0", "Sp([0,0]@rho2,3)"], vec![("/distinguished", json!(false))]),
        ex(
            &["parse", "Sp([0,0]@rho2,2) x Sp([0,0]@rho2,1)[1/4]"],
            vec![("/arthur_part", s("Sp([0,0]@rho2,2)")), ("/complementary_part", s("Sp([0,0]@rho2,1)[1/4]"))],
        ),
        ex(&["parse", "Sp([0,0]@rho2,2)"], vec![("/arthur_part", s("Sp([0,0]@rho2,2)")), ("/complementary_part", s("1"))]),
        ex(&["distinguished", "--p", "1", "--q", "1", "--a", "0", "Sp([0,0]@chi,1) x Sp([0,0]@chibar,1)"], vec![("/distinguished", json!(true))]),
        ex(&["distinguished", "--p", "2", "--q", "2", "--a", "0", "Sp([0,0]@rho2,2)"], vec![("/distinguished", json!(true))]),
        ex(
            &["distinguished", "--p", "6", "--q", "6", "--a", "0", "Sp([-1/2,1/2]@rho2,1) x Sp([-1/2,1/2]@rho2,2)"],
            vec![("/distinguished", json!(false)), ("/rule", s("unitary"))],
        ),
        ex(&["certify", "--p", "1", "--q", "1", "--a", "0", "[0,0]@rho2"], vec![("/verdict", s("possible")), ("/certificate/trace/0/case", s("B2"))]),
        ex(&["certify", "--p", "4", "--q", "4", "--a", "0", "[-1/2,3/2]@rho2 x [1/2,1/2]@rho2"], vec![("/verdict", s("impossible"))]),
        ex(&["certify", "--p", "2", "--q", "2", "--a", "0", "[0,1]@chi x [-1,0]@chibar"], vec![("/verdict", s("possible")), ("/certificate/trace/0/case", s("C"))]),
        ex(
            &["certify", "--p", "4", "--q", "4", "--a", "0", "Sp([-1/2,1/2]@chi,2) x Sp([-1/2,1/2]@chibar,2)"],
            vec![("/search", s("ladders")), ("/verdict", s("possible")), ("/certificate/trace/0/case", s("C"))],
        ),
        ex(&["certify", "--p", "2", "--q", "2", "--a", "0", "Sp([0,0]@rho2,2)"], vec![("/verdict", s("possible")), ("/certificate/trace/0/case", s("B"))]),
        ex(&["certify", "--p", "2", "--q", "2", "--a", "0", "Sp([-1/2,1/2]@chi,2)"], vec![("/verdict", s("impossible"))]),
        corrected(ex(
            &["shape", "[5/2,5/2]@triv + [1/2,3/2]@triv + [-3/2,1/2]@triv + [-5/2,-1/2]@triv"],
            vec![("/shape", json!({"form": "form1", "i1": 1, "i2": 1, "i3": 2, "l": 2}))],
        )),
        corrected(ex(
            &["shape", "[3/2,3/2]@triv + [1/2,1/2]@triv + [-3/2,-1/2]@triv + [-5/2,-3/2]@triv"],
            vec![("/shape", json!({"form": "form2", "i1": 2, "i2": 2}))],
        )),
        ex(&["shape", "[3,3]@triv + [0,2]@triv"], vec![("/shape", json!({"form": "none"}))]),
        ex(&["poleset", "--a", "0", "[0,0]@rho2 + [-1,-1]@rho2"], vec![("/passes", json!(true))]),
        ex(&["poleset", "--a", "7/2", "[4,4]@rho2"], vec![("/passes", json!(true))]),
        ex(&["poleset", "--a", "1/2", "[1,1]@triv + [0,0]@triv"], vec![("/passes", json!(false)), ("/points", json!(["1/2", "-1/2"]))]),
        ex(&["poleset", "--a", "5", "[1,1]@triv + [0,0]@triv"], vec![("/passes", json!(true))]),
        ex(&["crosscheck", "--universe", &triv, "--max-degree", "2"], vec![("/counts/0/reps", json!(3)), ("/clean", json!(true))]),
        ex(&["crosscheck", "--universe", &tr, "--max-degree", "8"], vec![("/clean", json!(true)), ("/discrepancies", json!([]))]),
        ex(&["crosscheck", "--universe", &empty, "--max-degree", "8"], vec![("/counts", json!([])), ("/total", json!(0))]),
        ex(&["crosscheck", "--universe", &pair, "--max-degree", "4"], vec![("/clean", json!(true))]),
        ex(&["parse", "[0,1]@rho2 + [-1,0]@rho2"], vec![("/terms/0/segments/1/text", s("[-1,0]@rho2")), ("/degree", json!(8))]),
        ex(&["speh", "Sp([0,1]@rho2, 2)"], vec![("/datum/text", s("Sp([0,1]@rho2,2)"))]),
        fails(&["parse", "[0,1/3]@rho2"], 1),
        fails(&["parse", "[0,1"], 2),
        fails(&["orbits", "--k", "1"], 2),
        fails(&["derivative", "--k", "1", "[2,3]@triv + [0,0]@triv"], 1),
        fails(&["distinguished", "--p", "1", "--q", "1", "--a", "1/2", "Sp([-1/2,1/2]@triv,2)"], 1),
        ex(&["jacquet", "--k", "2", "[1,2]@triv + [0,1]@triv"], vec![("/schema", s("linper.jacquet/1"))]),
    ]
}

fn cli(args: &[String]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("linper".to_string()).chain(args.iter().cloned());
    let code = run_with(argv, None, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn c10_cli() -> Check {
    let lines = builtin();
    let names: Vec<&str> = lines.ids().map(|x| lines.name(x)).collect();
    let mut rng = StdRng::seed_from_u64(SEED ^ 10);
    let mut parsed = 0;
    for _ in 0..200 {
        let text = random_expr(&mut rng, &names);
        let Ok(e) = parse(&text, &lines) else {
            return Err(format!("corpus expression failed to parse: {text}"));
        };
        let once = print(&e, &lines);
        let again = parse(&once, &lines).map_err(|err| format!("{once}: {err}"))?;
        ensure(again == e && print(&again, &lines) == once, || format!("not idempotent: {text} -> {once}"))?;
        parsed += 1;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let all = examples(dir.path());
    let mut fixed = 0;
    for e in &all {
        let (code, out, err) = cli(&e.args);
        ensure(code == e.exit, || format!("{:?}: exit {code}, stderr {err}", e.args))?;
        if code != 0 {
            ensure(out.is_empty() && !err.is_empty(), || format!("{:?}: error output misplaced", e.args))?;
            continue;
        }
        let v: Value = serde_json::from_str(&out).map_err(|x| format!("{:?}: {x}", e.args))?;
        ensure(v["schema"].as_str().is_some_and(|s| s.starts_with("linper.")), || format!("{:?}: no schema", e.args))?;
        for (ptr, want) in &e.checks {
            ensure(v.pointer(ptr) == Some(want), || format!("{:?} at {ptr}: got {:?}, want {want}", e.args, v.pointer(ptr)))?;
        }
        fixed += e.corrected as usize;
    }
    Ok(format!("{parsed} round trips, {} examples ({fixed} with corrected expectations)", all.len()))
}

#[test]
fn acceptance() {
    type Criterion = (u32, &'static str, Duration, fn() -> Check);
    let suite: [Criterion; 10] = [
        (1, "duality", Duration::from_secs(1), c1_duality),
        (2, "jacquet conservation", Duration::from_secs(5), c2_jacquet),
        (3, "derivative laws", Duration::from_secs(1), c3_derivative),
        (4, "orbit counts", Duration::from_secs(5), c4_orbits),
        (5, "mat matrices", Duration::from_secs(2), c5_mat),
        (6, "classification oracle", Duration::from_secs(30), c6_classification),
        (7, "necessity consistency", Duration::from_secs(60), c7_necessity),
        (8, "alternation", Duration::from_secs(1), c8_alternation),
        (9, "shape recognition", Duration::from_secs(2), c9_shapes),
        (10, "cli round trip and examples", Duration::from_secs(5), c10_cli),
    ];
    let mut failed = Vec::new();
    for (id, name, budget, run) in suite {
        let t = Instant::now();
        let result = run();
        let elapsed = t.elapsed();
        let verdict = match &result {
            Ok(_) if elapsed <= budget => "PASS",
            _ => "FAIL",
        };
        let detail = match &result {
            Ok(d) => d.clone(),
            Err(e) => e.clone(),
        };
        println!("{verdict} [{id:>2}] {name}: {detail} ({:.3}s / {}s)", elapsed.as_secs_f64(), budget.as_secs());
        if verdict == "FAIL" {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
