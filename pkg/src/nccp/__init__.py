"""Exact combinatorics of noncommutative crossing partitions.

Subpackages/modules:

* ``partitions``  -- the objects, predicates, and exhaustive enumeration
* ``trees``       -- labeled binary trees and the partition/tree bijections
* ``lattice``     -- rotation covers, join/meet, Hasse diagrams, Kreweras order
* ``shelling``    -- edge labelings, Mobius values, chain and parking counts
* ``complements`` -- bar, the region complements, and the Kreweras complement
* ``kary``        -- labeled k-ary trees, height sequences, Dyck tilings
* ``series``      -- counting formulas, type counts, generating functions
* ``cli``         -- the ``nccp`` command-line front end
"""

from .partitions import Partition, enumerate_partitions, catalan

__all__ = ["Partition", "enumerate_partitions", "catalan"]
