"""Built-in algebras: sl_n, its Killing form and the twisted cotangent family."""

from src.algebra.homlie import killing
from src.algebra.verify import cyclic_defect
from src.catalog.examples import cotangent_extension_data, cyclic_mu_tensor, killing_twisted_cotangent
from src.catalog.sl import sl

__all__ = [
    "cotangent_extension_data",
    "cyclic_defect",
    "cyclic_mu_tensor",
    "killing",
    "killing_twisted_cotangent",
    "sl",
]
