"""
Config file for symflag
"""

"""
symflag version
"""
VERSION = "0.3.0"

"""
Version tag written into the `schema` field of every report
"""
REPORT_SCHEMA = "symflag.report/1"

"""
Float backend tolerances (relative, absolute)
"""
FLOAT_REL_TOL = 1e-9
FLOAT_ABS_TOL = 1e-12

"""
Relative tolerance for the Key Lemma residual in the float backend
"""
KEY_LEMMA_FLOAT_TOL = 1e-8

"""
Float antipodality threshold: two subspaces are treated as transverse when the
determinant assembled from orthonormal bases exceeds this value
"""
ANTIPODAL_FLOAT_TOL = 1e-9

"""
Witness engine defaults
"""
WITNESS_TOL = 1e-10
WITNESS_EPSILON = 1e-6
JITTER_RETRIES = 8
RAY_DOUBLINGS = 60
BISECTION_STEPS = 400
NEWTON_STEPS = 50
ROOT_ISOLATION_WIDTH = 1e-12

"""
Environment variable capping the number of worker threads
"""
THREADS_ENV = "SYMFLAG_THREADS"

"""
Supported commands
{
    command string: check name
}
"""
SUPPORTED_COMMANDS = {
    "verify key-lemma": "key_lemma",
    "verify transversality": "transversality",
    "verify inversion": "inversion",
    "verify property-i": "property_i",
    "verify rep": "rep",
    "witness sl2c": "sl2c_witness",
    "witness su": "su_witness",
    "check non-maximal": "non_maximal",
}

"""
Statement each check verifies; copied into every report record
"""
ANCHORS = {
    "key_lemma": "Key Lemma: p_k(g^-1) = (-1)^k p_k(g)",
    "transversality": "Lemma: u.tau_opp is antipodal to tau_opp iff for all k in Theta, p_k(u) != 0",
    "inversion": "Lemma: the inversion map preserves C(tau_Theta) and C(tau_Theta^opp)",
    "property_i": "Lemma: if Theta contains an odd integer, then F_Theta has Property (I)",
    "rep": "rho_n(SL(2,C)): [H,X]=2X, [H,Y]=2Y, [X,Y]=0, [X,X^T]=H with c_k = sqrt(kn-k^2)",
    "sl2c_witness": "Theorem: rho_n(SL(2,C)) limit set is maximally antipodal in Iso_2",
    "su_witness": "Theorem: SU(n-1,1) limit set is maximally antipodal in Iso_2",
    "non_maximal": "Lemma: (g^-1 g')_1n = -1/2(|alpha|^2+|beta|^2+2)I + gamma R has determinant >= 1",
}

"""
Default backend per command group
"""
DEFAULT_BACKENDS = {
    "verify": "exact",
    "check": "exact",
    "witness": "float",
}
