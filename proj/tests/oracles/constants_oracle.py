"""High-precision reference values for the curvature constants and converse formulas.

Run with `python3 tests/oracles/constants_oracle.py`; the printed values are
frozen into curvature_test.cc, certifier_test.cc and acceptance_test.cc.
"""
import mpmath as mp

mp.mp.dps = 50


def zeta(k_min, d):
    if k_min >= 0 or d == 0:
        return mp.mpf(1)
    s = mp.sqrt(-k_min) * d
    return s / mp.tanh(s)


def delta_bar(k_max, d):
    if k_max <= 0 or d == 0:
        return mp.mpf(1)
    s = 2 * mp.sqrt(k_max) * d
    return s / mp.tan(s)


def converse(c, gamma, eta, db):
    a = (1 / (2 * gamma * eta)) * c / (1 - mp.sqrt(db * c) / 2)
    return a, gamma / 2


print("zeta(-1, 1)          =", mp.nstr(zeta(-1, mp.mpf(1)), 20))
print("zeta(-1, 2)          =", mp.nstr(zeta(-1, mp.mpf(2)), 20))
print("zeta(-1, 1e-6)       =", mp.nstr(zeta(-1, mp.mpf("1e-6")), 20))
print("delta_bar(1, pi/8)   =", mp.nstr(delta_bar(1, mp.pi / 8), 20))
print("delta_bar(1, 1e-6)   =", mp.nstr(delta_bar(1, mp.mpf("1e-6")), 20))
print("delta_bar(1, 0.15pi) =", mp.nstr(delta_bar(1, mp.mpf("0.15") * mp.pi), 20))
for c in ["0.01", "0.05", "0.1", "0.25", "0.5", "0.75", "1.0"]:
    c = mp.mpf(c)
    a, mu = converse(c, 1, 1, 1)
    print(f"c={mp.nstr(c, 3):>5}  a*mu*eta/c = {mp.nstr(a * mu / c, 20)}")
a, mu = converse(mp.mpf("0.25"), 2, mp.mpf("0.5"), 1)
print("converse(0.25,2,0.5,1) =", mp.nstr(a, 20), mp.nstr(mu, 20))
