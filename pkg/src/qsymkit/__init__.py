"""qsymkit: exact quasisymmetric power sums and their applications.

Subpackages:
  coeffs        exact rational coefficients in the parameters q, y, z
  compositions  compositions, partitions, refinement
  unimodal      alpha-unimodal subsets and consistent permutations
  qsym          the three quasisymmetric bases, conversions, omega
  posets        labeled posets, linear extensions, order-preserving surjections
  ppartitions   generating functions of (weighted, equivalence-refined)
                order-preserving maps, with positivity certificates
  families      chromatic, LLT, Tutte/B, matroid, Eulerian applications
  serialize     JSON and canonical text formats
  verify        the named check suites behind the command line
  cli           command-line entry point
"""

__version__ = "0.1.0"
