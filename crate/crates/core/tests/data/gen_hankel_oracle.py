"""Regenerate hankel_oracle.csv: H_n^(1)(x) for n = 0, 1, 2 at 1000
log-spaced points in [1e-3, 1e3], evaluated with mpmath at 40 digits."""
import mpmath as mp

mp.mp.dps = 40
with open("hankel_oracle.csv", "w") as f:
    f.write("x,order,re,im\n")
    for i in range(1000):
        x = float(10.0 ** (-3 + 6 * i / 999))
        for n in (0, 1, 2):
            h = mp.hankel1(n, mp.mpf(x))
            f.write(f"{x!r},{n},{mp.nstr(h.real, 20)},{mp.nstr(h.imag, 20)}\n")
