"""
A field whose line integrals diverge
====================================

Truncated line integrals of (1+|x|)^-a log(3+|x|)^-delta through the origin.
At a = k they grow without bound, but only like a power of log R, so over
radii 8 to 64 the growth is modest.
"""

from kplane.suites import demo_divergence

for a in (1.0, 2.0):
    rep = demo_divergence(a=a, delta=0.9, radii=(8, 16, 32, 64, 1024, 2**20))
    I = ", ".join(f"{x:.3f}" for x in rep.detail["integrals"])
    print(f"a={a:g} ({rep.detail['regime']}): I(R) = {I}")
