from .distributions import CondPmf, JointPmf, Pmf, dsbs
from .extended import ext_add, ext_max, ext_min, ext_sub, pos_diff, pos_part
from .grid import SimplexProductGrid
from .information import (
    cond_entropy,
    entropy,
    joint_entropy,
    kl,
    mutual_information,
    renyi_entropy,
    weighted_cond_kl,
)
from .types import (
    TypeDescriptor,
    empirical_joint,
    enumerate_joint_types,
    joint_type_of,
    log_conditional_type_class_size,
    log_type_class_size,
    simplex_grid,
)

__all__ = [
    'CondPmf', 'JointPmf', 'Pmf', 'dsbs',
    'ext_add', 'ext_max', 'ext_min', 'ext_sub', 'pos_diff', 'pos_part',
    'SimplexProductGrid',
    'cond_entropy', 'entropy', 'joint_entropy', 'kl', 'mutual_information',
    'renyi_entropy', 'weighted_cond_kl',
    'TypeDescriptor', 'empirical_joint', 'enumerate_joint_types', 'joint_type_of',
    'log_conditional_type_class_size', 'log_type_class_size', 'simplex_grid',
]
