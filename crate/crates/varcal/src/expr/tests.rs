use super::{parse, Bindings, EvalError, Expr, Func};
use proptest::prelude::*;

fn norm(s: &str) -> Expr {
    parse(s).unwrap().normalize()
}

fn eval_xyz(e: &Expr, x: f64, y: f64, yp: f64) -> Result<f64, EvalError> {
    e.evaluate(&Bindings::new().with("x", x).with("y", y).with("yp", yp))
}

// ------------------------------------------------------------ parsing ---

#[test]
fn parses_the_reference_lagrangians() {
    assert_eq!(norm("12*x*y - yp^2").to_string(), "12*x*y - yp^2");
    assert_eq!(norm("yp*(1 + x^2*yp)").to_string(), "yp*(1 + x^2*yp)");
}

#[test]
fn prime_notation_is_an_alias() {
    assert_eq!(norm("y' + y''"), norm("yp + ypp"));
    assert_eq!(norm("3*y'^2"), norm("3*yp^2"));
}

#[test]
fn caret_is_right_associative_and_binds_tighter_than_unary_minus() {
    assert_eq!(norm("2^3^2"), Expr::Constant(512.0));
    assert_eq!(norm("-x^2"), norm("-(x^2)"));
    assert_eq!(norm("2^-1"), Expr::Constant(0.5));
}

#[test]
fn division_is_left_associative() {
    assert_eq!(norm("x/2/2"), norm("x/4"));
}

#[test]
fn whitespace_is_free() {
    assert_eq!(parse(" 1+ 2 * x ").unwrap(), parse("1+2*x").unwrap());
}

#[test]
fn parse_errors_carry_byte_offsets() {
    assert_eq!(parse("sin(").unwrap_err().offset, 4);
    assert_eq!(parse("yp^^2").unwrap_err().offset, 3);
    assert_eq!(parse("").unwrap_err().offset, 0);
    assert_eq!(parse("2 +").unwrap_err().offset, 3);
    assert_eq!(parse("(x").unwrap_err().offset, 2);
    assert_eq!(parse("x 2").unwrap_err().offset, 2);
}

#[test]
fn unknown_functions_and_extra_primes_are_rejected() {
    assert!(parse("foo(2)").unwrap_err().to_string().contains("foo"));
    assert!(parse("y'''").is_err());
}

// ------------------------------------------------------------ display ---

#[test]
fn products_print_with_division() {
    assert_eq!(norm("4/x^2").to_string(), "4/x^2");
    assert_eq!(norm("1/(x*y)").to_string(), "1/(x*y)");
    assert_eq!(norm("x^2/y").to_string(), "x^2/y");
    assert_eq!(norm("-2*yp/x").to_string(), "-2*yp/x");
}

#[test]
fn negative_bases_keep_their_parentheses() {
    let e = Expr::pow(Expr::Constant(-3.0), Expr::Variable("x".into()));
    assert_eq!(e.to_string(), "(-3)^x");
    assert_eq!(parse("(-3)^x").unwrap().normalize().to_string(), "(-3)^x");
}

#[test]
fn sums_print_subtraction_for_negated_terms() {
    assert_eq!(norm("x - y").to_string(), "x - y");
    assert_eq!(norm("-x + y").to_string(), "-x + y");
}

// -------------------------------------------------------- derivatives ---

#[test]
fn partial_derivatives_of_the_reference_lagrangian() {
    let l = norm("12*x*y - yp^2");
    assert_eq!(l.differentiate("y"), norm("12*x"));
    assert_eq!(l.differentiate("yp"), norm("-2*yp"));
    assert_eq!(l.differentiate("q"), Expr::Constant(0.0));
}

#[test]
fn chain_rule_through_calls() {
    assert_eq!(norm("sin(x^2)").differentiate("x"), norm("2*x*cos(x^2)"));
    assert_eq!(norm("ln(sin(x))").differentiate("x"), norm("cos(x)/sin(x)"));
    assert_eq!(norm("exp(2*x)").differentiate("x"), norm("2*exp(2*x)"));
}

#[test]
fn trig_and_inverse_trig_rules() {
    assert_eq!(norm("tan(x)").differentiate("x"), norm("1 + tan(x)^2"));
    assert_eq!(norm("cot(x)").differentiate("x"), norm("-1 - cot(x)^2"));
    assert_eq!(norm("arctan(x)").differentiate("x"), norm("1/(1 + x^2)"));
    assert_eq!(norm("arccot(x)").differentiate("x"), norm("-1/(1 + x^2)"));
    assert_eq!(norm("sqrt(x)").differentiate("x"), norm("0.5/sqrt(x)"));
}

#[test]
fn total_x_derivative_of_the_momentum_integral() {
    let phi = norm("1 + 2*x^2*yp");
    let total = phi.total_x_derivative().unwrap();
    assert_eq!(total, norm("4*x*yp + 2*x^2*ypp"));
}

#[test]
fn total_x_derivative_rejects_second_order_input() {
    assert!(norm("ypp + x").total_x_derivative().is_err());
}

// ------------------------------------------------------- normalization ---

#[test]
fn collects_like_terms_and_factors() {
    assert_eq!(norm("yp + yp"), norm("2*yp"));
    assert_eq!(norm("x*x"), norm("x^2"));
    assert_eq!(norm("x - x"), Expr::Constant(0.0));
    assert_eq!(norm("x*x^-1"), Expr::Constant(1.0));
    assert_eq!(norm("x^2/x"), Expr::Variable("x".into()));
}

#[test]
fn folds_constants_through_calls_and_powers() {
    assert_eq!(norm("2*3 + sin(0)"), Expr::Constant(6.0));
    assert_eq!(norm("2^10"), Expr::Constant(1024.0));
    assert_eq!(norm("sqrt(4)"), Expr::Constant(2.0));
    // Out-of-domain folds are left alone rather than poisoned with NaN.
    assert_eq!(norm("sqrt(-1)").to_string(), "sqrt(-1)");
    assert_eq!(norm("1/0").to_string(), "0^-1");
}

#[test]
fn strips_identities() {
    assert_eq!(norm("0*y + x"), Expr::Variable("x".into()));
    assert_eq!(norm("x^1"), Expr::Variable("x".into()));
    assert_eq!(norm("x^0"), Expr::Constant(1.0));
    assert_eq!(norm("1*x + 0"), Expr::Variable("x".into()));
}

#[test]
fn integer_powers_absorb_signs_and_distribute() {
    assert_eq!(norm("(-x)^2"), norm("x^2"));
    assert_eq!(norm("(-x)^3"), norm("-x^3"));
    assert_eq!(norm("(2*x)^3"), norm("8*x^3"));
    assert_eq!(norm("(x^-2)^2"), norm("x^-4"));
}

#[test]
fn orders_terms_deterministically() {
    assert_eq!(norm("yp^2 + x").to_string(), "x + yp^2");
    assert_eq!(norm("x + 1").to_string(), "1 + x");
    assert_eq!(norm("ypp*x^2 + yp*x").to_string(), "x*yp + x^2*ypp");
}

#[test]
fn sign_extraction_reaches_a_fixed_point() {
    // Minimized cases that once broke idempotence or round-tripping:
    // pure-constant products with extracted signs, and -1 coefficients
    // landing on bare sums.
    for e in [
        Expr::Product(vec![Expr::Constant(0.1), Expr::neg(Expr::Constant(0.1))]),
        Expr::Product(vec![
            Expr::sum(vec![Expr::variable("x"), Expr::Constant(0.1)]),
            Expr::neg(Expr::pow(Expr::Constant(0.0), Expr::Constant(0.0))),
        ]),
        Expr::pow(
            Expr::Constant(0.0),
            Expr::Product(vec![Expr::Constant(-0.1), Expr::variable("x")]),
        ),
        parse("2*(y + 1) - 3*(y + 1)").unwrap(),
    ] {
        let once = e.normalize();
        assert_eq!(once.normalize(), once, "{e:?}");
        let reparsed = parse(&once.to_string()).unwrap();
        assert_eq!(reparsed.normalize(), once, "{e:?}");
    }
}

#[test]
fn normalize_is_idempotent_on_the_reference_expressions() {
    for s in [
        "12*x*y - yp^2",
        "yp*(1 + x^2*yp)",
        "-4*x*yp - 2*x^2*ypp",
        "sqrt((1 + yp^2)/(2 - y))",
    ] {
        let once = norm(s);
        assert_eq!(once.normalize(), once, "{s}");
    }
}

// ----------------------------------------------------------- evaluate ---

#[test]
fn evaluates_the_residual_at_a_point() {
    let r = norm("12*x + 2*ypp");
    let v = r
        .evaluate(&Bindings::new().with("x", -1.0).with("ypp", 6.0))
        .unwrap();
    assert_eq!(v, 0.0);
}

#[test]
fn reports_unbound_variables() {
    let err = norm("x + q").evaluate(&Bindings::new().with("x", 1.0));
    assert!(matches!(err, Err(EvalError::Unbound { ref name }) if name == "q"));
}

#[test]
fn reports_domain_errors() {
    let at = |s: &str, x: f64| parse(s).unwrap().evaluate(&Bindings::new().with("x", x));
    assert!(matches!(
        at("1/x", 0.0),
        Err(EvalError::DivisionByZero { .. })
    ));
    assert!(matches!(
        at("sqrt(x)", -4.0),
        Err(EvalError::SqrtNegative { .. })
    ));
    assert!(matches!(
        at("ln(x)", 0.0),
        Err(EvalError::LnNonPositive { .. })
    ));
    assert!(matches!(
        at("cot(x)", 0.0),
        Err(EvalError::CotSingular { .. })
    ));
    let e = Expr::pow(Expr::Variable("x".into()), Expr::Constant(0.5));
    assert!(matches!(
        e.evaluate(&Bindings::new().with("x", -8.0)),
        Err(EvalError::PowUndefined { .. })
    ));
}

// --------------------------------------------------------- substitute ---

#[test]
fn substitution_normalizes_the_result() {
    let e = norm("yp^2").substitute("yp", &norm("4/x^2"));
    assert_eq!(e.to_string(), "16/x^4");
    assert_eq!(norm("sin(x)").substitute("x", &Expr::Constant(0.0)), Expr::Constant(0.0));
    assert_eq!(norm("x + y").substitute("q", &Expr::Constant(5.0)), norm("x + y"));
}

#[test]
fn free_variables_see_through_cancellation() {
    let fv = norm("12*x*y - yp^2").free_variables();
    assert_eq!(
        fv.into_iter().collect::<Vec<_>>(),
        vec!["x".to_string(), "y".to_string(), "yp".to_string()]
    );
    let fv = parse("x - x + q").unwrap().free_variables();
    assert_eq!(fv.into_iter().collect::<Vec<_>>(), vec!["q".to_string()]);
}

// ----------------------------------------------------------- property ---

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        3 => (-99i32..=99).prop_map(|n| Expr::Constant(f64::from(n) / 10.0)),
        4 => prop_oneof![Just("x"), Just("y"), Just("yp"), Just("ypp"), Just("q")]
            .prop_map(Expr::variable),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        let func = prop_oneof![
            Just(Func::Sin),
            Just(Func::Cos),
            Just(Func::Tan),
            Just(Func::Cot),
            Just(Func::Sqrt),
            Just(Func::Exp),
            Just(Func::Ln),
            Just(Func::Arctan),
            Just(Func::Arccot),
        ];
        prop_oneof![
            3 => prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::Sum),
            3 => prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::Product),
            2 => (inner.clone(), -3i32..=3)
                .prop_map(|(b, k)| Expr::pow(b, Expr::Constant(f64::from(k)))),
            1 => (inner.clone(), inner.clone()).prop_map(|(b, e)| Expr::pow(b, e)),
            2 => inner.clone().prop_map(Expr::neg),
            2 => (func, inner).prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}

/// Expressions that are smooth near the sample box, for finite-difference
/// checks: sin/cos/exp only, positive integer powers.
fn arb_smooth() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        2 => (-30i32..=30).prop_map(|n| Expr::Constant(f64::from(n) / 10.0)),
        3 => prop_oneof![Just("x"), Just("y"), Just("yp")].prop_map(Expr::variable),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        let func = prop_oneof![Just(Func::Sin), Just(Func::Cos), Just(Func::Exp)];
        prop_oneof![
            3 => prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::Sum),
            2 => prop::collection::vec(inner.clone(), 2..=2).prop_map(Expr::Product),
            2 => (inner.clone(), 1i32..=3)
                .prop_map(|(b, k)| Expr::pow(b, Expr::Constant(f64::from(k)))),
            1 => inner.clone().prop_map(Expr::neg),
            2 => (func, inner).prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}

proptest! {
    /// Printing a normalized expression parses back to the identical tree.
    #[test]
    fn printing_round_trips(e in arb_expr()) {
        let n = e.normalize();
        let printed = n.to_string();
        let reparsed = parse(&printed)
            .unwrap_or_else(|err| panic!("failed to reparse `{printed}`: {err}"));
        prop_assert_eq!(reparsed.normalize(), n, "printed: {}", printed);
    }

    /// Printing any tree, normalized or not, preserves its value. (Exact
    /// tree round-trips are only promised for normalized input: reading
    /// `a/b^2` back as `a*(b^2)^-1` can fold constants one ulp apart.)
    #[test]
    fn printing_preserves_values(
        e in arb_expr(),
        x in -2.0..2.0f64,
        y in -2.0..2.0f64,
        yp in -2.0..2.0f64,
    ) {
        let b = Bindings::new()
            .with("x", x)
            .with("y", y)
            .with("yp", yp)
            .with("ypp", 0.7)
            .with("q", -1.3);
        let raw = e.evaluate(&b);
        prop_assume!(raw.is_ok());
        let raw = raw.unwrap();
        prop_assume!(raw.is_finite() && raw.abs() < 1e9);
        let printed = e.to_string();
        let reparsed = parse(&printed)
            .unwrap_or_else(|err| panic!("failed to reparse `{printed}`: {err}"));
        let rv = reparsed.evaluate(&b);
        prop_assume!(rv.is_ok());
        let rv = rv.unwrap();
        prop_assert!(
            (rv - raw).abs() <= 1e-12 * raw.abs().max(1.0),
            "printed `{}`: {} != {}",
            printed,
            raw,
            rv
        );
    }

    /// One normalize pass reaches the fixed point.
    #[test]
    fn normalize_is_idempotent(e in arb_expr()) {
        let once = e.normalize();
        prop_assert_eq!(once.normalize(), once);
    }

    /// Normalization preserves values wherever the raw tree evaluates.
    #[test]
    fn normalize_preserves_evaluation(
        e in arb_expr(),
        x in -2.0..2.0f64,
        y in -2.0..2.0f64,
        yp in -2.0..2.0f64,
    ) {
        let b = Bindings::new()
            .with("x", x)
            .with("y", y)
            .with("yp", yp)
            .with("ypp", 0.7)
            .with("q", -1.3);
        let raw = e.evaluate(&b);
        prop_assume!(raw.is_ok());
        let raw = raw.unwrap();
        prop_assume!(raw.is_finite() && raw.abs() < 1e9);
        let cooked = e.normalize().evaluate(&b);
        // Collection may extend the domain, never shrink it.
        let cooked = cooked.expect("normalized form must evaluate where the raw tree does");
        prop_assert!(
            (cooked - raw).abs() <= 1e-9 * raw.abs().max(1.0),
            "raw {} != normalized {}",
            raw,
            cooked
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    /// Symbolic derivatives agree with central finite differences.
    #[test]
    fn derivative_matches_finite_differences(
        e in arb_smooth(),
        x in -2.0..2.0f64,
        y in -2.0..2.0f64,
        yp in -2.0..2.0f64,
    ) {
        for var in ["x", "y", "yp"] {
            let d = e.differentiate(var);
            let exact = eval_xyz(&d, x, y, yp);
            prop_assume!(exact.is_ok());
            let exact = exact.unwrap();
            prop_assume!(exact.is_finite() && exact.abs() < 1e3);

            let h = 1e-5;
            let shift = |delta: f64| match var {
                "x" => eval_xyz(&e, x + delta, y, yp),
                "y" => eval_xyz(&e, x, y + delta, yp),
                _ => eval_xyz(&e, x, y, yp + delta),
            };
            let (lo, hi) = (shift(-h), shift(h));
            prop_assume!(lo.is_ok() && hi.is_ok());
            let (lo, hi) = (lo.unwrap(), hi.unwrap());
            prop_assume!(lo.is_finite() && hi.is_finite() && lo.abs().max(hi.abs()) < 1e3);
            let numeric = (hi - lo) / (2.0 * h);
            prop_assert!(
                (numeric - exact).abs() <= 1e-5 * exact.abs().max(1.0),
                "d/d{} mismatch: exact {}, numeric {}",
                var,
                exact,
                numeric
            );
        }
    }
}
