"""lamdist: distances between higher-order programs.

A small calculus of real-valued programs with a compositional difference
semantics (error-in gives bound-out), quantale-valued relation algebra
with exhaustive law checking on finite models, probe-based membership
checkers for the distance relation families, and a checker/synthesizer
for formal distance derivations.
"""

__version__ = "0.1.0"
