//! Golden corpus shared between the CLI round-trip tests and the
//! acceptance gate.

/// Canonical expressions: parsing and re-printing must be byte-identical.
pub const GOLDEN: &[&str] = &[
    "0",
    "1",
    "-1",
    "42",
    "1/2",
    "-3/4",
    "5/8",
    "1/3",
    "w",
    "-w",
    "w + 1",
    "w - 1",
    "w*2",
    "w*2 + 1/2",
    "1/2 + w",
    "w^(2)",
    "w^(w)",
    "w^(-1)",
    "w^(-w)",
    "w^(w^(-w))",
    "w^(w^(-1))",
    "w^(w + 1)",
    "w^(w)*3 - w^(2)*5 + 7",
    "w^(-1)*3 - w^(-2)",
    "w^(w^(w))",
    "eps(0)",
    "eps(1)",
    "eps(w)",
    "eps(-1)",
    "eps(eps(0))",
    "exp(w)",
    "log(w)",
    "log(log(w))",
    "exp(exp(exp(w)))",
    "exp(eps(0))",
    "log(w^(w^(-1)))",
    "g(1)",
    "g(eps(0))",
    "h(0)",
    "h(-1)",
    "h(w + 1)",
    "kappa(0)",
    "kappa(1)",
    "kappa(-1)",
    "kappa(2)",
    "kappa(1/2)",
    "kappa(-1, 2)",
    "kappa(0, -2)",
    "kappa(1/2, 2)",
    "kappa(iota(-1))",
    "iota(0)",
    "iota(-1)",
    "iota(1/2)",
    "sign(1/2)",
    "sign(w + 1/2)",
    "nf(exp(w))",
    "cmp(kappa(0), kappa(1))",
    "cmp(log(w), w^(w^(-1)))",
    "class(eps(0))",
    "class(w^(w^(-1)))",
    "class(1/2)",
    "-(w + 1)",
    "(1 + w)*2",
    "2*-3",
];
