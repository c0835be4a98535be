"""High-precision reference values for the Gamma/Beta constants and kernels.

Run once with mpmath; the printed values are pinned in the C++ unit tests.
"""
import mpmath as mp

mp.mp.dps = 40


def dbar(H):
    H = mp.mpf(H)
    return mp.gamma(0.5 - H) * mp.sqrt(2 * H * mp.gamma(1.5 - H) * mp.gamma(H + 0.5) / mp.gamma(2 - 2 * H))


def lam(H):
    H = mp.mpf(H)
    return 2 * H * mp.gamma(3 - 2 * H) * mp.gamma(H + 0.5) / mp.gamma(1.5 - H)


def eta(H, t, s):
    H = mp.mpf(H)
    # ∫_0^L v^{a-1} (s+v)^{-a} dv = s^{-a} L^a / a * 2F1(a, a; a+1; -L/s), a = 1/2 - H
    a = 0.5 - H
    L = mp.mpf(t) - s
    inner = s ** (-a) * L ** a / a * mp.hyp2f1(a, a, a + 1, -L / s)
    return s ** a * inner / dbar(H)


if __name__ == "__main__":
    print("log_gamma(4.7) =", mp.nstr(mp.loggamma(mp.mpf("4.7")), 20))
    for x in ["0.05", "0.3", "2.5", "7.25", "12.5", "29.5"]:
        print(f"log_gamma({x}) =", mp.nstr(mp.loggamma(mp.mpf(x)), 20))
    for H in ["0.05", "0.1", "0.25", "0.3", "0.4", "0.45"]:
        print(f"H={H} dbar={mp.nstr(dbar(H), 20)} lambda={mp.nstr(lam(H), 20)} "
              f"beta={mp.nstr(mp.beta(1.5 - mp.mpf(H), 0.5 - mp.mpf(H)), 20)}")
    print("digamma(0.2) =", mp.nstr(mp.digamma(mp.mpf("0.2")), 20))
    print("eta(H=0.3, t=1, s=0.5) =", mp.nstr(eta("0.3", mp.mpf(1), mp.mpf("0.5")), 20))
    print("eta(H=0.1, t=2, s=0.01) =", mp.nstr(eta("0.1", mp.mpf(2), mp.mpf("0.01")), 20))
    print("eta(H=0.45, t=1, s=0.999) =", mp.nstr(eta("0.45", mp.mpf(1), mp.mpf("0.999")), 20))
    print("upper_gamma_scaled(1.6, 3.0) =", mp.nstr(mp.exp(3) * mp.gammainc(mp.mpf("1.6"), 3), 20))
    print("upper_gamma_scaled(1.6, 0.4) =", mp.nstr(mp.exp(mp.mpf("0.4")) * mp.gammainc(mp.mpf("1.6"), mp.mpf("0.4")), 20))
