from .brute import BruteForce, oracle_approx, oracle_cut, oracle_verdict
from .generate import (
    Instance, InstanceBatch, InstanceSpec, bell, gen_batches, gen_instances, grid_pairs,
    grid_params, partitions,
)
from .properties import ALGEBRA, GUARANTEED, NON_THEOREMS, REGISTRY, Property, evaluate, get
from .search import (
    PropertyReport, Status, check_algebra, check_batches, check_guaranteed, check_instance,
    check_lattice, replay, search_counterexample, standard_batches, verify,
)
