"""
Random double-extension data for property tests and sample files.

Every family below satisfies the construction hypotheses, so the
built algebras must pass the Hom-Jacobi, centroid and metric checks:

* ``cotangent``: h = 0, ϕ = c·K, random cyclic μ.
* ``line``: h = span(u) with B_h = (b), Θ = 0, ρ = φ = 0 and τ alternating.
* ``null_pair``: h hyperbolic of dim 2, Θ(u1) = c·u2, ρ = φ = 0 and τ
  alternating, supported on u1.
* ``rotating_pair``: h hyperbolic of dim 2, Θ = 0, ρ(x_i) = diag(a_i, -a_i)
  and τ alternating.
* ``adjoint_module``: h = V, a copy of s acted on by ρ = ad with B_h = b·K,
  Θ = 0, φ = p·id: s → V (p ≠ 0) and τ = 0, so L = φᵀB_h is nonzero.
* ``nonabelian``: h = V ⊕ sl_2 with B_h = b·K ⊕ c·K_sl2, Θ = 0, ρ = ad on V
  and 0 on sl_2, φ = p·id into V and τ alternating, supported on sl_2.
  Over sl_2 unless ``n`` is given.
"""

import argparse
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.homlie import AnyAlgebra, HomLieAlgebra, QuadraticHomLieAlgebra, adjoint, killing
from src.algebra.tensor import StructureTensor
from src.catalog.examples import cyclic_mu_tensor
from src.catalog.sl import sl
from src.extension.data import DoubleExtensionData
from src.linalg.matrix import Matrix
from src.linalg.rational import unit_vector

logger = logging.getLogger(__name__)

FAMILIES = ("cotangent", "line", "null_pair", "rotating_pair", "adjoint_module", "nonabelian")

# Small rationals the generator draws from
SCALARS = tuple(Fraction(p, q) for p, q in [(-2, 1), (-1, 1), (-1, 2), (1, 3), (1, 2), (1, 1), (2, 1), (3, 1)])

HYPERBOLIC = Matrix.from_rows([[0, 1], [1, 0]])


class ExtensionDataGenerator:
    """Seeded source of DoubleExtensionData instances."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = random.Random(seed)
        self._s_cache: Dict[int, Tuple[StructureTensor, Matrix]] = {}
        self._ad_cache: Dict[int, Tuple[Matrix, ...]] = {}

    def scalar(self, allow_zero: bool = True) -> Fraction:
        if allow_zero and self.rng.random() < 0.25:
            return Fraction(0)
        return self.rng.choice(SCALARS)

    def _simple(self, n: int) -> Tuple[StructureTensor, Matrix]:
        if n not in self._s_cache:
            s = sl(n)
            self._s_cache[n] = (s.bracket, killing(s))
        return self._s_cache[n]

    def _adjoints(self, n: int) -> Tuple[Matrix, ...]:
        """ad(x_i) of sl_n, in the basis of sl_n."""
        if n not in self._ad_cache:
            s = sl(n)
            self._ad_cache[n] = tuple(adjoint(s, unit_vector(s.dim, i)) for i in range(s.dim))
        return self._ad_cache[n]

    def _adjoint_module(self, n: int, extra: int) -> Tuple[Tuple[Matrix, ...], Matrix]:
        """ρ = ad on V ≅ sl_n, zero on ``extra`` trailing coordinates, and φ = p·id into V."""
        ads = self._adjoints(n)
        m = len(ads)
        rho = tuple(Matrix.block_diagonal(ad, Matrix.zeros(extra, extra)) for ad in ads)
        p = self.scalar(allow_zero=False)
        phi = Matrix.from_rows(
            [[p if r == c else 0 for c in range(m)] for r in range(m)] + [[0] * m for _ in range(extra)], cols=m
        )
        return rho, phi

    def random_mu(self, dim: int, max_orbits: int = 3) -> StructureTensor:
        values = {}
        for _ in range(self.rng.randint(0, max_orbits)):
            key = tuple(sorted(self.rng.sample(range(1, dim + 1), 3)))
            values[key] = self.scalar(allow_zero=False)
        return cyclic_mu_tensor(dim, values)

    def alternating_tau(self, s_dim: int, h_dim: int, support: Sequence[int]) -> Tuple[Matrix, ...]:
        """τ with τ(x_i)(u_a)(x_j) = -τ(x_j)(u_a)(x_i), nonzero only on u_a for a in ``support``."""
        values = [[[Fraction(0)] * h_dim for _ in range(s_dim)] for _ in range(s_dim)]
        for a in support:
            for i in range(s_dim):
                for j in range(i + 1, s_dim):
                    if self.rng.random() < 0.3:
                        t = self.scalar(allow_zero=False)
                        values[i][j][a] = t
                        values[j][i][a] = -t
        return tuple(Matrix.from_rows(values[i], cols=h_dim) for i in range(s_dim))

    def generate(self, family: Optional[str] = None, n: Optional[int] = None) -> DoubleExtensionData:
        family = family or self.rng.choice(FAMILIES)
        if family not in FAMILIES:
            raise ValueError(f"Unknown family '{family}' - expected one of {FAMILIES}")
        if n is None:
            n = 2 if family == "nonabelian" else self.rng.choice((2, 3))
        bracket_s, K = self._simple(n)
        s_dim = bracket_s.dim
        varphi = K.scale(self.scalar())
        mu = self.random_mu(s_dim)
        bracket_h: Optional[StructureTensor] = None
        phi: Optional[Matrix] = None

        if family == "cotangent":
            h_dim = 0
            theta = gram_h = Matrix.zeros(0, 0)
            rho = tuple(Matrix.zeros(0, 0) for _ in range(s_dim))
            tau = tuple(Matrix.zeros(s_dim, 0) for _ in range(s_dim))
        elif family == "line":
            h_dim = 1
            theta = Matrix.zeros(1, 1)
            gram_h = Matrix.from_rows([[self.scalar(allow_zero=False)]])
            rho = tuple(Matrix.zeros(1, 1) for _ in range(s_dim))
            tau = self.alternating_tau(s_dim, 1, [0])
        elif family == "null_pair":
            h_dim = 2
            theta = Matrix.from_rows([[0, 0], [self.scalar(), 0]])
            gram_h = HYPERBOLIC
            rho = tuple(Matrix.zeros(2, 2) for _ in range(s_dim))
            tau = self.alternating_tau(s_dim, 2, [0])
        elif family == "rotating_pair":
            h_dim = 2
            theta = Matrix.zeros(2, 2)
            gram_h = HYPERBOLIC
            rotations = [self.scalar() for _ in range(s_dim)]
            rho = tuple(Matrix.from_rows([[a, 0], [0, -a]]) for a in rotations)
            tau = self.alternating_tau(s_dim, 2, [0, 1])
        elif family == "adjoint_module":
            h_dim = s_dim
            theta = Matrix.zeros(h_dim, h_dim)
            gram_h = K.scale(self.scalar(allow_zero=False))
            rho, phi = self._adjoint_module(n, 0)
            tau = tuple(Matrix.zeros(s_dim, h_dim) for _ in range(s_dim))
        else:
            sl2_bracket, sl2_killing = self._simple(2)
            h_dim = s_dim + sl2_bracket.dim
            theta = Matrix.zeros(h_dim, h_dim)
            gram_h = Matrix.block_diagonal(
                K.scale(self.scalar(allow_zero=False)), sl2_killing.scale(self.scalar(allow_zero=False))
            )
            bracket_h = sl2_bracket.shifted(s_dim, h_dim)
            rho, phi = self._adjoint_module(n, sl2_bracket.dim)
            tau = self.alternating_tau(s_dim, h_dim, range(s_dim, h_dim))

        data = DoubleExtensionData(
            s_dim=s_dim,
            h_dim=h_dim,
            bracket_s=bracket_s,
            bracket_h=bracket_h if bracket_h is not None else StructureTensor.zero(h_dim),
            theta=theta,
            gram_h=gram_h,
            phi=phi if phi is not None else Matrix.zeros(h_dim, s_dim),
            varphi=varphi,
            rho=rho,
            tau=tau,
            mu=mu,
        )
        logger.debug(f"Generated {family} instance over sl_{n} (seed {self.seed})")
        return data

    def random_algebra(self, max_dim: int = 5) -> AnyAlgebra:
        """An arbitrary (not necessarily Hom-Lie) algebra, with a metric about half the time."""
        dim = self.rng.randint(0, max_dim)
        entries = [
            (i, j, k, self.scalar(allow_zero=False))
            for i in range(dim) for j in range(i + 1, dim) for k in range(dim)
            if self.rng.random() < 0.2
        ]
        twist = Matrix.from_rows([[self.scalar() for _ in range(dim)] for _ in range(dim)], cols=dim)
        labels = tuple(f"b{i}" for i in range(dim)) if self.rng.random() < 0.5 else None
        algebra = HomLieAlgebra(dim, StructureTensor.from_entries(dim, entries), twist, labels)
        if self.rng.random() < 0.5:
            return algebra
        upper = [[self.scalar() for _ in range(dim)] for _ in range(dim)]
        gram = Matrix.from_rows([[upper[min(r, c)][max(r, c)] for c in range(dim)] for r in range(dim)], cols=dim)
        return QuadraticHomLieAlgebra(algebra, gram, strict=False)

    def write_files(self, output_dir: Path, count: int) -> List[Path]:
        """Write ``count`` extension files named by seed and index."""
        from src.serialization.codec import serialize_extension

        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        paths = []
        for index in range(count):
            path = output_dir / f"extension_{self.seed}_{index:03d}.json"
            path.write_text(serialize_extension(self.generate()), encoding="utf-8")
            paths.append(path)
        logger.info(f"Wrote {count} extension files to {output_dir}")
        return paths


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for generating sample extension files."""
    parser = argparse.ArgumentParser(description="Generate random double-extension data files")
    parser.add_argument("seed", type=int, help="Random seed")
    parser.add_argument("--count", "-c", type=int, default=10, help="Number of files to generate")
    parser.add_argument("--output", "-o", default="generated", help="Output directory")
    args = parser.parse_args(argv)

    paths = ExtensionDataGenerator(args.seed).write_files(Path(args.output), args.count)
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
