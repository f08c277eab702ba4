"""Kuramoto phase oscillators coupled on a join of circulant graphs.

The dynamics are d(theta_i)/dt = omega_i + eps * sum_j A_ij *
sin(theta_j - theta_i) with A the real dense expansion of the network.
When the network joins d identical real symmetric circulant blocks of
size k, every Fourier index 1 <= j <= k-1 together with per-block phase
offsets phi_1..phi_d yields an explicit equilibrium: block i, position r
carries phase 2*pi*r*j/k + phi_i.  More generally, any eigenvector of A
with a real eigenvalue and entries of one common modulus gives an
equilibrium through its entrywise argument.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DivergenceError, PreconditionError
from .join import JoinSpec

TWO_PI = 2.0 * np.pi


def reduce_phases(theta):
    """Map phases to the interval (-pi, pi]."""
    theta = np.asarray(theta, dtype=np.float64)
    reduced = np.mod(theta, TWO_PI)
    return np.where(reduced > np.pi, reduced - TWO_PI, reduced)


class KuramotoSystem:
    """Oscillator network on a real join, with coupling strength and
    per-oscillator natural frequencies (zero by default)."""

    __slots__ = ("network", "epsilon", "omega", "adjacency")

    def __init__(self, network, epsilon=1.0, omega=None):
        if not isinstance(network, JoinSpec):
            raise PreconditionError("network must be a JoinSpec")
        if not network.is_real():
            raise PreconditionError("Kuramoto network must have real entries")
        self.network = network
        self.epsilon = float(epsilon)
        n = network.n
        if omega is None:
            self.omega = np.zeros(n)
        else:
            om = np.asarray(omega, dtype=np.float64)
            if om.shape == ():
                om = np.full(n, float(om))
            if om.shape != (n,):
                raise PreconditionError(f"omega must be a scalar or length-{n} vector")
            self.omega = om
        self.adjacency = np.ascontiguousarray(network.dense().real)

    @property
    def n(self):
        return self.network.n


def rhs(system, theta):
    """Instantaneous phase velocities at the given state."""
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    if theta.shape != (system.n,):
        raise PreconditionError(f"state must have length {system.n}")
    return _kernels.kuramoto_rhs(
        theta, system.adjacency, system.omega, system.epsilon
    )


def default_equilibrium_tol(system):
    anorm = float(np.abs(system.adjacency).sum(axis=1).max())
    return 1e-8 * (1.0 + abs(system.epsilon) * anorm)


def check_equilibrium(system, theta, tol=None):
    """Whether theta is an equilibrium; returns (flag, residual norm)."""
    if tol is None:
        tol = default_equilibrium_tol(system)
    residual = float(np.abs(rhs(system, theta)).max())
    return residual <= tol, residual


@dataclass(frozen=True)
class TwistedEquilibrium:
    """Twisted equilibrium state: winding index j, per-block offsets,
    and the phase vector (reduced to (-pi, pi])."""

    fourier_index: int
    phis: np.ndarray = field(repr=False)
    theta: np.ndarray = field(repr=False)


def build_twisted_equilibrium(system, j, phis):
    """Equilibrium on a join of d identical real symmetric circulant
    blocks: phase 2*pi*r*j/k + phi_i at position r of block i.

    The exponential of this state is the sum over blocks of
    e^{i phi_i} times the zero-padded Fourier mode at index j, an
    eigenvector of the network at the (real) block eigenvalue, which is
    what makes the state stationary.
    """
    network = system.network
    first = network.blocks[0]
    if any(b != first for b in network.blocks[1:]):
        raise PreconditionError("twisted equilibria need identical blocks")
    vec = first.vector
    k = first.k
    if np.any(vec.imag != 0.0) or not np.array_equal(vec[1:], vec[1:][::-1]):
        raise PreconditionError(
            "twisted equilibria need a real symmetric circulant block"
        )
    if not 1 <= j <= k - 1:
        raise PreconditionError(f"fourier index {j} out of range [1, {k - 1}]")
    phis = np.atleast_1d(np.asarray(phis, dtype=np.float64))
    if phis.shape != (network.d,):
        raise PreconditionError(f"need one phase offset per block ({network.d})")
    if np.any(np.abs(phis) > np.pi + 1e-12):
        raise PreconditionError("phase offsets must lie in [-pi, pi]")
    ramp = TWO_PI * j * np.arange(k) / k
    theta = np.concatenate([ramp + phi for phi in phis])
    phis = phis.copy()
    phis.setflags(write=False)
    theta = reduce_phases(theta)
    theta.setflags(write=False)
    return TwistedEquilibrium(fourier_index=j, phis=phis, theta=theta)


def eigenvector_equilibrium(system, v, eigenvalue):
    """Phase state read off an eigenvector, when the hypotheses hold.

    Requires (A v ~ eigenvalue * v) up to 1e-8 * (1 + norm(A)); returns
    None unless the eigenvalue is real (|Im| <= 1e-10) and all entries
    of v share one positive modulus to within 1e-8, in which case the
    entrywise argument of v is an equilibrium.
    """
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (system.n,):
        raise PreconditionError(f"vector must have length {system.n}")
    a = system.adjacency
    anorm = float(np.abs(a).sum(axis=1).max())
    residual = float(np.abs(a @ v - eigenvalue * v).max())
    if residual > 1e-8 * (1.0 + anorm):
        raise PreconditionError(
            f"not an eigenpair: residual {residual:.3e} exceeds tolerance"
        )
    if abs(complex(eigenvalue).imag) > 1e-10:
        return None
    moduli = np.abs(v)
    common = float(moduli.mean())
    if common <= 1e-8 or np.abs(moduli - common).max() > 1e-8:
        return None
    return reduce_phases(np.angle(v))


@dataclass(frozen=True)
class Trajectory:
    """Sampled trajectory; phases are stored unreduced."""

    times: np.ndarray = field(repr=False)
    thetas: np.ndarray = field(repr=False)

    def reduced(self):
        return reduce_phases(self.thetas)

    @property
    def steps(self):
        return self.thetas.shape[0] - 1


def integrate(system, theta0, dt, steps):
    """Fixed-step classical RK4 from theta0; samples every step.

    Raises DivergenceError (carrying the step index) if the state stops
    being finite.
    """
    if dt <= 0.0:
        raise PreconditionError("dt must be positive")
    steps = int(steps)
    if steps < 1:
        raise PreconditionError("steps must be >= 1")
    theta0 = np.ascontiguousarray(theta0, dtype=np.float64)
    if theta0.shape != (system.n,):
        raise PreconditionError(f"initial state must have length {system.n}")
    thetas, bad = _kernels.rk4_trajectory(
        theta0, system.adjacency, system.omega, system.epsilon, float(dt), steps
    )
    if bad >= 0:
        raise DivergenceError(bad)
    times = dt * np.arange(steps + 1)
    return Trajectory(times=times, thetas=thetas)
