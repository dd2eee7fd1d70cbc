from .fields import FieldElement, GaloisField, gf
from .zsigmondy import cyclotomic_value, multiplicative_order, zsigmondy_prime
from .families import (
    JRV,
    agammal1,
    agl,
    alternating,
    cyclic,
    dihedral,
    elementary_abelian,
    frobenius21,
    gl,
    jrv_group,
    nilpotent_theta,
    quaternion,
    semilinear_map,
    small_54_5,
    standard,
    symmetric,
)
from .thm_d import ThmDStatistics, index_two_subgroups, thm_d_statistics

__all__ = [
    "FieldElement", "GaloisField", "gf", "cyclotomic_value", "multiplicative_order", "zsigmondy_prime",
    "JRV", "agammal1", "agl", "alternating", "cyclic", "dihedral", "elementary_abelian", "frobenius21",
    "gl", "jrv_group", "nilpotent_theta", "quaternion", "semilinear_map", "small_54_5", "standard",
    "symmetric", "ThmDStatistics", "index_two_subgroups", "thm_d_statistics",
]
