"""Sample inputs for testing and demonstration."""

# g(z) with g(z)g(1/z) = 1 used by the acceptance runs
ACCEPTANCE_G = {
    "one": "1",
    "z": "z",
    "minus_z_squared": "-z**2",
    "one_root": "(z-2)/(1-2*z)",
    # the roots 2 and 1/2 cancel against the denominator: g = -1
    "reciprocal_pair": "-(z-2)*(z-1/2)/((1-2*z)*(1-z/2))",
    "two_roots": "(z-2)*(z-3)/((1-2*z)*(1-3*z))",
}

# g(1) = -1 with a nontrivial h
SAMPLE_SUPER = "-(z-2)/(1-2*z)"

# a member of the n-root family sign * prod(z - q_i) / prod(1 - q_i z)
SAMPLE_THREE_ROOTS = "(z-2)*(z-3)*(z+5)/((1-2*z)*(1-3*z)*(1+5*z))"

# the Verma runs need alpha = g(0) = -1
SAMPLE_ALPHA_MINUS_ONE = ACCEPTANCE_G["reciprocal_pair"]

# (z-2)/(1-2z) in JSON form, with and without its roots
SAMPLE_G_JSON = {"num": ["-2", "1"], "den": ["1", "-2"]}
SAMPLE_G_JSON_WITH_ROOTS = {"num": ["-2", "1"], "den": ["1", "-2"], "roots": [["2", 1]]}

# inputs that must be rejected
NOT_SYMMETRIC = ["z+1", "(z-2)/(1-3*z)", "2*z"]
IRRATIONAL_ROOTS = "(z**2-3)/(1-3*z**2)"

# U(2) for A[-1]
SAMPLE_U2_JSON = {
    "dim": 2,
    "E0": [["0", "2"], ["0", "0"]],
    "F0": [["0", "0"], ["1", "0"]],
    "Psi0": [["2", "0"], ["0", "-2"]],
}

# number of P-B-W monomials in degrees 0..8
EXPECTED_PBW_COUNTS = {
    "plain": [1, 3, 9, 22, 51, 108, 221, 429, 810],
    "super": [1, 3, 7, 16, 32, 61, 112, 197, 336],
}

ALPHA_SAMPLES = {
    "open": 1,
    "u_lambda": -1,
    "nilpotent": ["-2", "3", "1/2"],
}
