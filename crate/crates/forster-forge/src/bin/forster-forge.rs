//! Command-line surface: every library capability as a subcommand that
//! reads JSON arguments (inline or `@file`) and writes one JSON document to
//! standard output — always valid JSON, with the machine-checkable
//! certificate under `"certificate"`.
//!
//! Exit codes: 0 success; 2 a precondition on caller-supplied data failed;
//! 3 an internal invariant broke (never expected); 64 usage error (reported
//! on standard error).
//!
//! Every randomized search takes `--seed` and defaults to a fixed value, so
//! runs are reproducible. Outputs fed back through `--verify` are re-checked
//! against the same inputs. The `FORSTER_FORGE_TRIAL_BOUND` environment
//! variable overrides the trial-division bound used by primality and
//! maximal-ideal enumeration.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use forster_forge::azumaya::{
    artin_schreier, artin_schreier_descent, is_azumaya, is_galois, split_over_finite_field,
    symbol_algebra, RootOfUnity,
};
use forster_forge::error::{Error, Result};
use forster_forge::forster_swan::{
    ideal_two_generators, lift_generators, minimal_generators, LiftedGenerators, TwoGenerators,
};
use forster_forge::grassmann::classifying_surjection;
use forster_forge::hilbert::{hilbert_symbol, hilbert_symbol_by_search, Place};
use forster_forge::json as fj;
use forster_forge::ring::quad::QuadIdeal;
use forster_forge::ring::Ring;
use forster_forge::selftest;
use forster_forge::sl_factor::factor_sl;

/// Default seed for every randomized search.
const DEFAULT_SEED: u64 = 1729;

#[derive(Parser)]
#[command(
    name = "forster-forge",
    about = "Exact generator algorithms, elementary SL factorizations, and \
             Azumaya/Galois certificates over semilocal rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a determinant-one matrix into elementary transvections.
    FactorSl {
        /// Ring descriptor, e.g. '{"type":"zmod","n":"6"}'.
        #[arg(long)]
        ring: String,
        /// Matrix JSON ({"rows":…,"cols":…,"data":[…]}).
        #[arg(long)]
        matrix: String,
        /// Previous output to re-check instead of recomputing.
        #[arg(long)]
        verify: Option<String>,
    },
    /// Minimal generating set of a module presentation.
    MinGens {
        /// Module JSON ({"ring":…,"ambient":t,"relations":matrix}).
        #[arg(long)]
        module: String,
        #[arg(long)]
        verify: Option<String>,
    },
    /// Lift generators of M/IM to generators of M, fixed modulo I·M.
    LiftGens {
        #[arg(long)]
        module: String,
        /// Ideal generators, a JSON array of ring elements.
        #[arg(long)]
        ideal: String,
        /// The elements to lift, a JSON array of length-t vectors.
        #[arg(long)]
        elems: String,
        #[arg(long)]
        verify: Option<String>,
    },
    /// Two generators x, y for an ideal of a maximal quadratic order.
    TwoGenIdeal {
        /// The order's discriminant parameter d (squarefree).
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        /// The ideal as a row-major 2×2 Hermite basis [[a,0],[b,c]].
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        verify: Option<String>,
    },
    /// Classifying surjection for a projective idempotent and generators.
    Classify {
        /// Idempotent JSON ({"ring":…,"e":matrix}).
        #[arg(long)]
        idempotent: String,
        /// Generators of im(e), as the columns of a matrix.
        #[arg(long)]
        gens: String,
        #[arg(long)]
        verify: Option<String>,
    },
    /// Symbol algebra (a,b)_{n,R} with its Azumaya certificate.
    Symbol {
        #[arg(long)]
        ring: String,
        /// The slot a, a unit of the ring.
        #[arg(long)]
        a: String,
        /// The slot b, a unit of the ring.
        #[arg(long)]
        b: String,
        /// Degree n of the symbol.
        #[arg(long)]
        n: usize,
        /// A primitive n-th root of unity in the ring.
        #[arg(long)]
        rho: String,
        /// Also split the algebra over a finite field (explicit M_n iso).
        #[arg(long)]
        split: bool,
        /// Seed for the idempotent search.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        verify: Option<String>,
    },
    /// Hilbert symbol (a,b) over the rationals at one place.
    Hilbert {
        /// Nonzero integer a.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Nonzero integer b.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// A prime p, or "infinity".
        #[arg(long)]
        place: String,
        /// Cross-check the closed form against exhaustive solvability.
        #[arg(long)]
        verify: bool,
    },
    /// Build an Artin–Schreier extension, or recover its parameter.
    ArtinSchreier {
        /// "build" (from --ring and --a) or "descend" (from --extension).
        mode: String,
        #[arg(long)]
        ring: Option<String>,
        /// The parameter a, an element of the ring.
        #[arg(long)]
        a: Option<String>,
        /// A Galois extension ({"ring":…,"algebra":…,"automorphisms":…}).
        #[arg(long)]
        extension: Option<String>,
        #[arg(long)]
        verify: Option<String>,
    },
    /// Run the seeded invariant suites and report check counts.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // All usage problems (including --help/--version, which clap
            // models as errors) go to the conventional streams; real usage
            // errors exit 64.
            if e.use_stderr() {
                eprint!("{e}");
                std::process::exit(64);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    match dispatch(cli.command) {
        Ok(v) => {
            println!("{}", fj::to_canonical_string(&v));
        }
        Err(e) => {
            let v = json!({"error": e.to_string(), "exit_code": e.exit_code()});
            println!("{}", fj::to_canonical_string(&v));
            std::process::exit(e.exit_code());
        }
    }
}

/// Read an argument as JSON: inline text, or the contents of a file when
/// prefixed with `@`.
fn arg_json(raw: &str) -> Result<Value> {
    let text = if let Some(path) = raw.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::BadInput(format!("cannot read {path}: {e}")))?
    } else {
        raw.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Error::BadInput(format!("invalid JSON: {e}")))
}

fn arg_bigint(raw: &str) -> Result<BigInt> {
    raw.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::BadInput(format!("not a decimal integer: {raw:?}")))
}

fn verified() -> Value {
    json!({"verified": true})
}

fn get<'v>(v: &'v Value, key: &str) -> Result<&'v Value> {
    v.get(key)
        .ok_or_else(|| Error::BadInput(format!("the output to verify lacks {key:?}")))
}

fn dispatch(cmd: Command) -> Result<Value> {
    match cmd {
        Command::FactorSl {
            ring,
            matrix,
            verify,
        } => {
            let ring = fj::ring_from_json(&arg_json(&ring)?)?;
            let a = fj::matrix_from_json_over(&ring, &arg_json(&matrix)?)?;
            if let Some(prev) = verify {
                let word = fj::word_from_json(&ring, &arg_json(&prev)?)?;
                if word.product(&ring)? != a {
                    return Err(Error::BadInput(
                        "the word does not multiply back to the matrix".into(),
                    ));
                }
                return Ok(verified());
            }
            let word = factor_sl(&a)?;
            let product = word.product(&ring)?;
            if product != a {
                return Err(Error::Internal("factorization failed to multiply back".into()));
            }
            let mut out = match fj::word_to_json(&word) {
                Value::Object(m) => m,
                _ => unreachable!("words serialize to objects"),
            };
            out.insert(
                "certificate".into(),
                json!({"length": word.len(), "multiply_back_equal": true}),
            );
            Ok(Value::Object(out))
        }

        Command::MinGens { module, verify } => {
            let m = fj::module_from_json(&arg_json(&module)?)?;
            if let Some(prev) = verify {
                let prev = arg_json(&prev)?;
                let gens: Vec<Vec<_>> = fj::as_vectors(&m.ring, get(&prev, "generators")?)?;
                let (max_dim, _) = m.max_fiber_dim()?;
                if gens.len() != max_dim {
                    return Err(Error::BadInput(format!(
                        "{} generators, but the fiber bound is {max_dim}",
                        gens.len()
                    )));
                }
                if let Some(w) = m.non_generating_witness(&gens)? {
                    return Err(Error::NotGenerating { ideal: w.label() });
                }
                return Ok(verified());
            }
            let result = minimal_generators(&m)?;
            Ok(json!({
                "certificate": {
                    "attaining_ideal": fj::max_ideal_to_json(&result.attaining_ideal),
                    "fiber_dims": result
                        .fiber_dims
                        .iter()
                        .map(|(h, d)| json!({"dim": d, "ideal": fj::max_ideal_to_json(h)}))
                        .collect::<Vec<_>>(),
                    "generates": true,
                },
                "count": result.count,
                "generators": result
                    .generators
                    .iter()
                    .map(|g| fj::elems_to_json(g))
                    .collect::<Vec<_>>(),
            }))
        }

        Command::LiftGens {
            module,
            ideal,
            elems,
            verify,
        } => {
            let m = fj::module_from_json(&arg_json(&module)?)?;
            let ideal_gens = fj::elems_from_json(&m.ring, &arg_json(&ideal)?)?;
            let b = fj::as_vectors(&m.ring, &arg_json(&elems)?)?;
            if let Some(prev) = verify {
                let prev = arg_json(&prev)?;
                let generators = fj::as_vectors(&m.ring, get(&prev, "generators")?)?;
                let corrections = fj::as_correction_tables(
                    &m.ring,
                    get(get(&prev, "certificate")?, "corrections")?,
                )?;
                let lifted = LiftedGenerators {
                    generators,
                    corrections,
                };
                lifted.verify(&m, &ideal_gens, &b)?;
                return Ok(verified());
            }
            let lifted = lift_generators(&m, &ideal_gens, &b)?;
            lifted.verify(&m, &ideal_gens, &b)?;
            Ok(json!({
                "certificate": {
                    "corrections": lifted
                        .corrections
                        .iter()
                        .map(|per_gen| {
                            per_gen
                                .iter()
                                .map(|v| fj::elems_to_json(v))
                                .collect::<Vec<_>>()
                        })
                        .collect::<Vec<_>>(),
                    "fixed_modulo_ideal": true,
                    "generates": true,
                },
                "generators": lifted
                    .generators
                    .iter()
                    .map(|g| fj::elems_to_json(g))
                    .collect::<Vec<_>>(),
            }))
        }

        Command::TwoGenIdeal { d, ideal, verify } => {
            let ring = Ring::quad_order(arg_bigint(&d)?)?;
            let ideal = fj::quad_ideal_from_json(&ring, &arg_json(&ideal)?)?;
            if let Some(prev) = verify {
                let prev = arg_json(&prev)?;
                let pair = TwoGenerators {
                    x: fj::elem_from_json(&ring, get(&prev, "x")?)?,
                    y: fj::elem_from_json(&ring, get(&prev, "y")?)?,
                };
                pair.verify(&ideal)?;
                return Ok(verified());
            }
            let pair = ideal_two_generators(&ideal)?;
            pair.verify(&ideal)?;
            let regenerated =
                QuadIdeal::from_generators(&ring, &[pair.x.clone(), pair.y.clone()])?;
            Ok(json!({
                "certificate": {
                    "equal_to_input": true,
                    "norm": fj::bigint_to_json(&ideal.norm()),
                    "regenerated": fj::quad_ideal_to_json(&regenerated),
                },
                "x": fj::elem_to_json(&pair.x),
                "y": fj::elem_to_json(&pair.y),
            }))
        }

        Command::Classify {
            idempotent,
            gens,
            verify,
        } => {
            let p = fj::idempotent_from_json(&arg_json(&idempotent)?)?;
            let gens_matrix = fj::matrix_from_json_over(&p.ring, &arg_json(&gens)?)?;
            let gens_cols = gens_matrix.columns();
            if let Some(prev) = verify {
                let prev = arg_json(&prev)?;
                let a = fj::matrix_from_json_over(&p.ring, get(get(&prev, "frame")?, "a")?)?;
                let b = fj::matrix_from_json_over(&p.ring, get(get(&prev, "frame")?, "b")?)?;
                let rows = fj::matrix_from_json_over(&p.ring, get(&prev, "rows")?)?;
                if !a.mul(&b).is_identity() {
                    return Err(Error::BadInput("a·b is not the identity".into()));
                }
                if b.mul(&a) != p.e {
                    return Err(Error::BadInput("b·a is not the idempotent".into()));
                }
                if rows != a.mul(&gens_matrix) {
                    return Err(Error::BadInput("rows ≠ a·generators".into()));
                }
                if b.mul(&rows) != gens_matrix {
                    return Err(Error::BadInput(
                        "the round trip does not return the generators".into(),
                    ));
                }
                return Ok(verified());
            }
            let surj = classifying_surjection(&p, &gens_cols)?;
            surj.verify()?;
            Ok(json!({
                "certificate": {
                    "idempotent_equation": true,
                    "retraction_identity": true,
                    "round_trip_generators": true,
                    "section_surjective": true,
                },
                "frame": {
                    "a": fj::matrix_to_json(&surj.frame.a),
                    "b": fj::matrix_to_json(&surj.frame.b),
                },
                "generators": fj::matrix_to_json(&surj.generators),
                "rows": fj::matrix_to_json(&surj.rows),
            }))
        }

        Command::Symbol {
            ring,
            a,
            b,
            n,
            rho,
            split,
            seed,
            verify,
        } => {
            let ring = fj::ring_from_json(&arg_json(&ring)?)?;
            let a = fj::elem_from_json(&ring, &arg_json(&a)?)?;
            let b = fj::elem_from_json(&ring, &arg_json(&b)?)?;
            let rho = RootOfUnity::new(&ring, &fj::elem_from_json(&ring, &arg_json(&rho)?)?, n)?;
            let alg = symbol_algebra(&a, &b, &rho)?;
            if let Some(prev) = verify {
                let prev = arg_json(&prev)?;
                // Re-parsing the algebra re-runs the associativity and unit
                // checks; it must also equal the freshly built table.
                let parsed = fj::algebra_from_json(&ring, get(&prev, "algebra")?)?;
                if parsed != alg {
                    return Err(Error::BadInput(
                        "the algebra table differs from the inputs' symbol algebra".into(),
                    ));
                }
                let cert = is_azumaya(&alg)?;
                let claimed = get(get(&prev, "certificate")?, "azumaya")?;
                if claimed.as_bool() != Some(cert.azumaya) {
                    return Err(Error::BadInput("the Azumaya verdict does not match".into()));
                }
                if let Some(sv) = prev.get("split").filter(|v| !v.is_null()) {
                    let split_cert = fj::split_from_json(&ring, sv)?;
                    split_cert.verify(&alg)?;
                }
                return Ok(verified());
            }
            let cert = is_azumaya(&alg)?;
            let mut out = Map::new();
            out.insert("algebra".into(), fj::algebra_to_json(&alg));
            out.insert("certificate".into(), fj::azumaya_certificate_to_json(&cert));
            out.insert("ring".into(), fj::ring_to_json(&ring));
            if split {
                let split_cert = split_over_finite_field(&alg, seed.unwrap_or(DEFAULT_SEED))?;
                split_cert.verify(&alg)?;
                out.insert("split".into(), fj::split_to_json(&split_cert));
            }
            Ok(Value::Object(out))
        }

        Command::Hilbert { a, b, place, verify } => {
            let a = arg_bigint(&a)?;
            let b = arg_bigint(&b)?;
            let place = parse_place(&place)?;
            let symbol = hilbert_symbol(&a, &b, &place)?;
            let mut certificate = Map::new();
            certificate.insert("method".into(), json!("closed-form"));
            if verify {
                let by_search = hilbert_symbol_by_search(&a, &b, &place)?;
                if by_search != symbol {
                    return Err(Error::Internal(format!(
                        "closed form gives {symbol} but the search gives {by_search}"
                    )));
                }
                certificate.insert("search_agrees".into(), json!(true));
            }
            Ok(json!({
                "a": fj::bigint_to_json(&a),
                "b": fj::bigint_to_json(&b),
                "certificate": Value::Object(certificate),
                "place": place.to_string(),
                "symbol": symbol,
            }))
        }

        Command::ArtinSchreier {
            mode,
            ring,
            a,
            extension,
            verify,
        } => match mode.as_str() {
            "build" => {
                let ring = fj::ring_from_json(&arg_json(&ring.ok_or_else(usage_ring)?)?)?;
                let a = fj::elem_from_json(&ring, &arg_json(&a.ok_or_else(usage_a)?)?)?;
                if let Some(prev) = verify {
                    // Parsing re-verifies the algebra and the automorphism
                    // group; the extension must still be Galois.
                    let ext = fj::extension_from_json(&arg_json(&prev)?)?;
                    let cert = is_galois(&ext)?;
                    if !cert.galois {
                        return Err(Error::BadInput("the extension is not Galois".into()));
                    }
                    return Ok(verified());
                }
                let ext = artin_schreier(&ring, &a)?;
                let cert = is_galois(&ext)?;
                if !cert.galois {
                    return Err(Error::Internal(
                        "a freshly built extension failed the Galois criterion".into(),
                    ));
                }
                let mut out = match fj::extension_to_json(&ext) {
                    Value::Object(m) => m,
                    _ => unreachable!("extensions serialize to objects"),
                };
                out.insert("a".into(), fj::elem_to_json(&a));
                out.insert(
                    "certificate".into(),
                    fj::galois_certificate_to_json(&cert),
                );
                Ok(Value::Object(out))
            }
            "descend" => {
                let ext = fj::extension_from_json(&arg_json(
                    &extension.ok_or_else(usage_extension)?,
                )?)?;
                if let Some(prev) = verify {
                    let d = fj::descent_from_json(&ext.algebra.ring, &arg_json(&prev)?)?;
                    d.verify(&ext)?;
                    return Ok(verified());
                }
                let d = artin_schreier_descent(&ext)?;
                d.verify(&ext)?;
                let mut out = match fj::descent_to_json(&d) {
                    Value::Object(m) => m,
                    _ => unreachable!("descents serialize to objects"),
                };
                out.insert(
                    "certificate".into(),
                    json!({
                        "galois": true,
                        "parameter_in_base_ring": true,
                        "powers_form_a_basis": true,
                    }),
                );
                Ok(Value::Object(out))
            }
            other => Err(Error::BadInput(format!(
                "unknown mode {other:?}: expected \"build\" or \"descend\""
            ))),
        },

        Command::Selftest { seed } => {
            let report = selftest::run(seed.unwrap_or(DEFAULT_SEED))?;
            Ok(json!({
                "seed": report.seed,
                "suites": report
                    .suites
                    .iter()
                    .map(|s| json!({"checks": s.checks, "name": s.name}))
                    .collect::<Vec<_>>(),
                "total": report.total,
            }))
        }
    }
}

fn parse_place(raw: &str) -> Result<Place> {
    match raw.trim() {
        "infinity" | "inf" | "oo" => Ok(Place::Infinity),
        p => p
            .parse::<u64>()
            .map(Place::Finite)
            .map_err(|_| Error::BadInput(format!("not a place: {raw:?}"))),
    }
}

fn usage_ring() -> Error {
    Error::BadInput("artin-schreier build requires --ring".into())
}

fn usage_a() -> Error {
    Error::BadInput("artin-schreier build requires --a".into())
}

fn usage_extension() -> Error {
    Error::BadInput("artin-schreier descend requires --extension".into())
}
