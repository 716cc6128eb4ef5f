"""Material parameters of the Cosserat shell."""

from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import InvalidMaterial


@dataclass(frozen=True)
class MaterialParams:
    """
    Isotropic Cosserat shell parameters.

    Attributes
    ----------
    mu, lam : float
        Lame moduli; ``mu > 0`` and ``lam + 2 mu > 0``.
    mu_c : float
        Cosserat couple modulus, ``>= 0``.
    L_c : float
        Internal length, ``> 0``.
    b1, b2, b3 : float
        Curvature weights, ``> 0``.
    h : float
        Shell thickness, ``> 0``.

    """

    mu: float = 1.0
    lam: float = 1.0
    mu_c: float = 1.0
    L_c: float = 1.0
    b1: float = 1.0
    b2: float = 1.0
    b3: float = 1.0
    h: float = 0.1

    def __post_init__(self):
        for f in fields(self):
            if not np.isfinite(getattr(self, f.name)):
                raise InvalidMaterial(f'{f.name} must be finite')
        if self.mu <= 0.0:
            raise InvalidMaterial('mu must be positive')
        if self.lam + 2.0*self.mu <= 0.0:
            raise InvalidMaterial('lambda + 2 mu must be positive')
        if self.mu_c < 0.0:
            raise InvalidMaterial('mu_c must be non-negative')
        if self.L_c <= 0.0 or self.h <= 0.0:
            raise InvalidMaterial('L_c and h must be positive')
        if min(self.b1, self.b2, self.b3) <= 0.0:
            raise InvalidMaterial('curvature weights b1, b2, b3 must be positive')

    @property
    def kappa(self):
        """Plane-stress bulk-type coefficient ``lam mu / (lam + 2 mu)``."""
        return self.lam*self.mu/(self.lam + 2.0*self.mu)

    @property
    def c_lam(self):
        """Transverse contraction ratio ``lam / (lam + 2 mu)``."""
        return self.lam/(self.lam + 2.0*self.mu)

    @classmethod
    def from_dict(cls, d):
        """Build from the scenario keys (``lambda`` instead of ``lam``)."""
        d = dict(d)
        if 'lambda' in d:
            d['lam'] = d.pop('lambda')
        allowed = {f.name for f in fields(cls)}
        unknown = set(d) - allowed
        if unknown:
            raise InvalidMaterial(f'unknown material keys: {sorted(unknown)}')
        try:
            return cls(**{k: float(v) for k, v in d.items()})
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidMaterial):
                raise
            raise InvalidMaterial(str(exc)) from exc

    def to_dict(self):
        d = asdict(self)
        d['lambda'] = d.pop('lam')
        return d
