//! Scanner claims checked against oracle ground truth on one presentation.

use cancelkit::oracle::EqVerdict;
use cancelkit::{Context, Letter, Presentation, RootAnswer, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{context, Cli, Failure};

/// Default length of the exhaustive geodesic/oracle comparison.
pub const DEFAULT_RADIUS: usize = 6;
/// Largest alphabet-power of words the exhaustive suites will enumerate.
const EXHAUSTIVE_LIMIT: usize = 200_000;
const MAX_FAILURES_SHOWN: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub model: String,
    pub radius: usize,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

struct Suite {
    result: SuiteResult,
    failed: usize,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            result: SuiteResult { name, cases: 0, failures: Vec::new(), skipped: None },
            failed: 0,
        }
    }

    fn skipped(name: &'static str, why: impl Into<String>) -> SuiteResult {
        let mut s = Suite::new(name);
        s.result.skipped = Some(why.into());
        s.result
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.result.cases += 1;
        if !ok {
            self.failed += 1;
            if self.result.failures.len() < MAX_FAILURES_SHOWN {
                self.result.failures.push(what());
            }
        }
    }

    fn finish(mut self) -> SuiteResult {
        if self.failed > self.result.failures.len() {
            let more = self.failed - self.result.failures.len();
            self.result.failures.push(format!("... and {more} more"));
        }
        self.result
    }
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &[Letter], max_len: usize, reduced: bool) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut v: Vec<Letter> = Vec::with_capacity(len);
    while v.len() < len {
        let l = alphabet[rng.gen_range(0..alphabet.len())];
        if reduced && v.last().is_some_and(|x| x.is_inverse_of(l)) {
            continue;
        }
        v.push(l);
    }
    Word::from_letters(v)
}

/// Freely reduced words of each length up to `n`, shortest first.
fn reduced_words(alphabet: &[Letter], n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for u in &layer {
            for &l in alphabet {
                if !u.last().is_some_and(|x| x.is_inverse_of(l)) {
                    let mut v = u.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn exhaustive_radius(alphabet: usize, radius: usize) -> usize {
    (0..=radius)
        .take_while(|&r| alphabet.saturating_mul((alphabet - 1).saturating_pow(r.saturating_sub(1) as u32)) <= EXHAUSTIVE_LIMIT)
        .last()
        .unwrap_or(0)
}

fn geodesic_vs_oracle(c: &Context, radius: usize) -> SuiteResult {
    const NAME: &str = "geodesic-oracle";
    let o = c.oracle();
    if !o.is_exact() {
        return Suite::skipped(NAME, "no reference model for this presentation");
    }
    let alphabet = c.geometry().alphabet();
    let r = exhaustive_radius(alphabet.len(), radius);
    if let Err(e) = o.ball(r) {
        return Suite::skipped(NAME, e.to_string());
    }
    let mut s = Suite::new(NAME);
    for w in reduced_words(alphabet, r) {
        let d = o.distance(&w, w.len()).ok().flatten();
        s.check(c.geometry().is_geodesic(&w) == (d == Some(w.len())), || format!("{w}: oracle distance {d:?}"));
    }
    s.finish()
}

fn dfa_vs_scanner(c: &Context, rng: &mut ChaCha8Rng, radius: usize, cases: usize) -> SuiteResult {
    let mut s = Suite::new("dfa-scanner");
    let alphabet = c.geometry().alphabet();
    let dfa = c.dfa();
    let exhaustive = reduced_words(alphabet, exhaustive_radius(alphabet.len(), radius));
    let random = (0..cases).map(|_| random_word(rng, alphabet, 14, false));
    for w in exhaustive.into_iter().chain(random) {
        s.check(dfa.accepts(&w) == c.geometry().is_geodesic(&w), || w.to_string());
    }
    s.finish()
}

fn certificates(c: &Context, rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = Suite::new("certificates");
    let g = c.geometry();
    for _ in 0..cases * 50 {
        if s.result.cases >= cases {
            break;
        }
        let w = random_word(rng, g.alphabet(), 10, true);
        let Some(cert) = g.find_bad_subword(&w) else { continue };
        let schema = cert.verify(g.symmetrized());
        let eq = c.oracle().equal(&cert.outer, &cert.replacement);
        s.check(schema.is_ok() && !matches!(eq, Ok(EqVerdict::Distinct) | Err(_)), || {
            format!("{w}: {schema:?} {eq:?}")
        });
    }
    s.finish()
}

fn reduction(c: &Context, rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = Suite::new("reduction");
    let o = c.oracle();
    for _ in 0..cases {
        let w = random_word(rng, c.geometry().alphabet(), 8, false);
        let (r, trail) = c.geometry().reduce_to_geodesic(&w);
        let ok = trail.len() <= w.len()
            && c.geometry().is_geodesic(&r)
            && match o.distance(&w, w.len()) {
                Ok(d) => d == Some(r.len()),
                Err(_) => o.equal(&w, &r) != Ok(EqVerdict::Distinct),
            };
        s.check(ok, || format!("{w} -> {r}"));
    }
    s.finish()
}

fn tau_laws(c: &Context, rng: &mut ChaCha8Rng, cases: usize) -> Result<SuiteResult, Failure> {
    let mut s = Suite::new("tau-laws");
    let alphabet = c.geometry().alphabet();
    for _ in 0..cases {
        let w = random_word(rng, alphabet, 5, false);
        let h = random_word(rng, alphabet, 3, false);
        let k = rng.gen_range(1..=4u64);
        let t = c.translation_number(&w)?;
        let tk = c.translation_number(&w.pow(k as usize))?;
        let ti = c.translation_number(&w.inverse())?;
        let tc = c.translation_number(&h.concat(&w).concat(&h.inverse()))?;
        s.check(tk.twice == k * t.twice && ti == t && tc == t, || {
            format!("{w} (k = {k}, h = {h}): {t} {tk} {ti} {tc}")
        });
    }
    Ok(s.finish())
}

fn root_replay(c: &Context, rng: &mut ChaCha8Rng, cases: usize) -> Result<SuiteResult, Failure> {
    let mut s = Suite::new("root-replay");
    let alphabet = c.geometry().alphabet();
    for _ in 0..cases {
        let n = rng.gen_range(2..=3);
        let base = random_word(rng, alphabet, 3, true);
        let w = if rng.gen_bool(0.5) { base.pow(n) } else { random_word(rng, alphabet, 5, true) };
        let ok = match c.nth_root(&w, n)? {
            RootAnswer::Yes { witness, conjugator } => {
                let lhs = conjugator.concat(&witness.pow(n)).concat(&conjugator.inverse());
                c.oracle().equal(&lhs, &w) != Ok(EqVerdict::Distinct)
            }
            RootAnswer::No { .. } => w != base.pow(n),
            RootAnswer::Inconclusive { .. } => true,
        };
        s.check(ok, || format!("root({w}, {n})"));
    }
    Ok(s.finish())
}

pub fn run(cli: &Cli, p: &Presentation, radius: usize, cases: usize) -> Result<SelftestReport, Failure> {
    let c = context(cli, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let suites = vec![
        geodesic_vs_oracle(&c, radius),
        dfa_vs_scanner(&c, &mut rng, radius, cases),
        certificates(&c, &mut rng, cases),
        reduction(&c, &mut rng, cases),
        tau_laws(&c, &mut rng, cases)?,
        root_replay(&c, &mut rng, cases)?,
    ];
    let passed = suites.iter().all(|s| s.failures.is_empty());
    Ok(SelftestReport {
        model: c.oracle().kind().to_string(),
        radius,
        seed: cli.seed,
        suites,
        passed,
    })
}
