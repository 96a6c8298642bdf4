"""torsion-packet: exact verification of periodic-point exclusion arguments
on primitive genus-two Veech surfaces.

Subpackages and modules:

* ``exactnum``    -- rationals, quadratic fields, cyclotomic fields, signs
* ``tanratio``    -- tangent ratios of rational angles and their classification
* ``lshape``      -- L-shaped surface parameters and the non-unit exclusion
* ``stablefiber`` -- nodal limit fibers, limit differentials, torsion solvers
* ``cli``         -- the ``torsion-packet`` command-line front end
"""

__version__ = "0.1.0"
