"""Three-qubit absorption refrigerator with a global thermalization structure.

One qubit per terminal, coupled on resonance through a three-body flip-flop
term. The machine is solved in its exact eigenbasis: the coupling splits the
single degenerate pair of product levels, each bath's flip operator breaks
into transition components between eigenlevels, and every component relaxes
at the bath's rate evaluated at its own transition frequency. That global
construction is what keeps the entropy balance nonnegative; a local variant
that thermalizes bare qubits is available behind an explicit flag for
comparison, with no law guarantees.

Level numbering follows the conventional table order (0, cold, work, split
pair, cold+hot, work+hot, top) rather than ascending energy, so the edge sets
match the usual transition diagrams.
"""

import math
from dataclasses import dataclass

import numpy as np

from .amplifier import occupation
from .errors import RegimeError
from .operators import (
    HilbertSpace,
    LindbladTerm,
    Operator,
    build_liouvillian,
    channel_current,
    steady_state,
)
from .reports import CurrentsReport, assemble_report

__all__ = [
    "ThreeQubitLevels",
    "three_qubit_eigensystem",
    "three_qubit_fridge",
    "three_qubit_noise_fridge",
    "three_qubit_fridge_local",
]

#: relative width below which two distinct energies count as unresolvable
DEGENERACY_RTOL = 1e-9
#: relative width for merging transition frequencies into one Davies block
_CLUSTER_RTOL = 1e-10
#: matrix elements below this are treated as forbidden transitions
_ELEMENT_TOL = 1e-12

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class ThreeQubitLevels:
    """Eigenlevels in table order with the allowed transition edges.

    Energies are a tuple of eight values; each edge set lists 1-based
    ``(i, j)`` level pairs that the named bath connects.
    """

    energies: tuple[float, ...]
    hot_edges: tuple[tuple[int, int], ...]
    cold_edges: tuple[tuple[int, int], ...]
    work_edges: tuple[tuple[int, int], ...]


def _validated(omega_h: float, omega_c: float, nu: float, epsilon: float) -> float:
    if not (omega_h > omega_c > 0.0 and nu > 0.0):
        raise ValueError("need omega_h > omega_c > 0 and nu > 0")
    if epsilon < 0.0:
        raise ValueError("epsilon must be nonnegative")
    scale = omega_h + omega_c + nu
    if abs(omega_h - omega_c - nu) > 1e-9 * scale:
        raise RegimeError(
            "the three-body coupling conserves energy only on resonance "
            "(nu = omega_h - omega_c)"
        )
    return scale


def _table_frame(omega_h, omega_c, nu, epsilon):
    """Energies and eigenvectors in table order.

    Product-basis index is ``4 n_hot + 2 n_cold + n_work``. Only the pair
    {|011>, |100>} is mixed by the coupling; it splits symmetrically around
    the hot frequency.
    """
    root_half = 1.0 / math.sqrt(2.0)
    energies = (
        0.0,
        omega_c,
        nu,
        omega_h - epsilon,
        omega_h + epsilon,
        omega_h + omega_c,
        omega_h + nu,
        omega_h + omega_c + nu,
    )
    u = np.zeros((8, 8))
    u[0, 0] = 1.0  # |000>
    u[2, 1] = 1.0  # |010>
    u[1, 2] = 1.0  # |001>
    u[3, 3], u[4, 3] = root_half, -root_half
    u[3, 4], u[4, 4] = root_half, root_half
    u[6, 5] = 1.0  # |110>
    u[5, 6] = 1.0  # |101>
    u[7, 7] = 1.0  # |111>
    return energies, u


def _guard_near_degeneracy(energies, scale) -> None:
    for i in range(8):
        for j in range(i + 1, 8):
            gap = abs(energies[i] - energies[j])
            if 0.0 < gap < DEGENERACY_RTOL * scale:
                raise RegimeError(
                    f"levels {i + 1} and {j + 1} sit {gap:.3e} apart, too close "
                    "to resolve into separate thermalization blocks"
                )


def _flip_in_eigenbasis(u: np.ndarray, qubit: int) -> np.ndarray:
    """sigma_x of one qubit (0 hot, 1 cold, 2 work) between table states."""
    mats = [np.eye(2)] * 3
    mats[qubit] = _SIGMA_X
    flip = np.kron(np.kron(mats[0], mats[1]), mats[2])
    return u.T @ flip @ u


def _lowering_components(sx_eigen, energies, scale):
    """(frequency, i, j, amplitude) per downward transition, i below j."""
    comps = []
    for i in range(8):
        for j in range(8):
            gap = energies[j] - energies[i]
            amp = sx_eigen[i, j]
            if abs(amp) <= _ELEMENT_TOL:
                continue
            if gap > _CLUSTER_RTOL * scale:
                comps.append((gap, i, j, amp))
            elif abs(gap) <= _CLUSTER_RTOL * scale and i < j:
                raise RegimeError(
                    f"levels {i + 1} and {j + 1} are degenerate yet directly "
                    "coupled; no thermalization block exists for a zero gap"
                )
    comps.sort(key=lambda c: c[0])
    return comps


def _davies_blocks(sx_eigen, energies, scale, temp, rate_fn):
    """Clustered thermal transition blocks for one bath.

    Each block gathers the downward components sharing one transition
    frequency and carries ``(frequency, entries, gamma, n_occ)`` with
    ``entries`` a list of ``(target, source, amplitude)`` index pairs.
    """
    comps = _lowering_components(sx_eigen, energies, scale)
    blocks = []
    block: list[tuple[float, int, int, float]] = []

    def flush():
        if not block:
            return
        freq = sum(c[0] for c in block) / len(block)
        entries = [(i, j, amp) for _, i, j, amp in block]
        blocks.append((freq, entries, rate_fn(freq), occupation(freq, temp)))
        block.clear()

    for comp in comps:
        if block and comp[0] - block[-1][0] > _CLUSTER_RTOL * scale:
            flush()
        block.append(comp)
    flush()
    return blocks


def _davies_terms(space, sx_eigen, energies, scale, temp, rate_fn, channel):
    """Thermal jump pairs for one bath, one per transition-frequency block."""
    terms = []
    for _freq, entries, gamma, n_occ in _davies_blocks(
        sx_eigen, energies, scale, temp, rate_fn
    ):
        lower = np.zeros((8, 8), dtype=complex)
        for i, j, amp in entries:
            lower[i, j] = amp
        down = Operator(space, lower)
        terms.append(LindbladTerm(down, gamma * (n_occ + 1.0), channel))
        terms.append(LindbladTerm(down.dagger(), gamma * n_occ, channel))
    return terms


def _classical_currents(energies, channel_blocks):
    """Steady heat currents from the population rate matrix.

    Valid whenever every dissipator is a thermal block between eigenstates:
    the populations then evolve autonomously (coherences only decay), so the
    64-dimensional steady state collapses onto the kernel of an 8 x 8
    classical generator.  ``channel_blocks`` maps channel name to the output
    of :func:`_davies_blocks`.
    """
    w = np.zeros((8, 8))
    for blocks in channel_blocks.values():
        for _freq, entries, gamma, n_occ in blocks:
            for i, j, amp in entries:
                weight = abs(amp) ** 2
                w[i, j] += gamma * (n_occ + 1.0) * weight
                w[j, i] += gamma * n_occ * weight
    gen = w - np.diag(w.sum(axis=0))
    system = np.vstack([gen, np.ones(8)])
    target = np.zeros(9)
    target[-1] = 1.0
    pops, *_ = np.linalg.lstsq(system, target, rcond=None)
    currents = {}
    for name, blocks in channel_blocks.items():
        flow = 0.0
        for _freq, entries, gamma, n_occ in blocks:
            for i, j, amp in entries:
                weight = abs(amp) ** 2
                gap = energies[j] - energies[i]
                flow -= gamma * (n_occ + 1.0) * weight * pops[j] * gap
                flow += gamma * n_occ * weight * pops[i] * gap
        currents[name] = float(flow)
    return currents


def _edges_of(sx_eigen) -> tuple[tuple[int, int], ...]:
    edges = []
    for i in range(8):
        for j in range(i + 1, 8):
            if abs(sx_eigen[i, j]) > _ELEMENT_TOL:
                edges.append((i + 1, j + 1))
    return tuple(edges)


def three_qubit_eigensystem(
    omega_h: float, omega_c: float, nu: float, epsilon: float
) -> ThreeQubitLevels:
    """Spectrum and bath-transition graph of the coupled three-qubit machine.

    The eight energies come back in table order; each bath's edge set holds
    the level pairs its flip operator connects, so the cold and hot baths
    each drive six transitions once the coupling splits the resonant pair.
    """
    scale = _validated(omega_h, omega_c, nu, epsilon)
    energies, u = _table_frame(omega_h, omega_c, nu, epsilon)
    _guard_near_degeneracy(energies, scale)
    return ThreeQubitLevels(
        energies=energies,
        hot_edges=_edges_of(_flip_in_eigenbasis(u, 0)),
        cold_edges=_edges_of(_flip_in_eigenbasis(u, 1)),
        work_edges=_edges_of(_flip_in_eigenbasis(u, 2)),
    )


def _eigenframe_generator(omega_h, omega_c, nu, epsilon, channel_specs):
    """Generator and measured Hamiltonian on the eight table levels.

    channel_specs maps a channel name to either ("thermal", T, rate_fn) or
    ("noise", eta) acting through that qubit's flip operator.
    """
    scale = _validated(omega_h, omega_c, nu, epsilon)
    energies, u = _table_frame(omega_h, omega_c, nu, epsilon)
    _guard_near_degeneracy(energies, scale)
    space = HilbertSpace((("fridge_levels", 8),))
    hamiltonian = Operator(space, np.diag(np.asarray(energies, dtype=complex)))
    qubit_of = {"hot": 0, "cold": 1, "work": 2}
    terms = []
    for channel, spec in channel_specs.items():
        sx_eigen = _flip_in_eigenbasis(u, qubit_of[channel])
        if spec[0] == "thermal":
            _, temp, rate_fn = spec
            terms.extend(
                _davies_terms(
                    space, sx_eigen, energies, scale, temp, rate_fn, channel
                )
            )
        else:
            _, eta = spec
            flip = Operator(space, sx_eigen, hermitian=True)
            terms.append(LindbladTerm(flip, 2.0 * eta, channel))
    gen = build_liouvillian(hamiltonian, terms)
    return gen, hamiltonian


def _solved_currents(gen, hamiltonian):
    rho = steady_state(gen)
    return {
        name: channel_current(gen.channel(name), rho, hamiltonian)
        for name in gen.channel_names
    }


def three_qubit_fridge(
    omega_h: float,
    omega_c: float,
    nu: float,
    epsilon: float,
    baths: tuple[tuple[float, float], tuple[float, float], tuple[float, float]],
    *,
    cold_spectral_exponent: float = 0.0,
    work_spectral_exponent: float = 0.0,
) -> CurrentsReport:
    """Steady currents of the thermally driven three-qubit refrigerator.

    ``baths`` lists (temperature, rate) for hot, cold, work in that order;
    all three temperatures must be finite and positive (an unbounded work
    temperature is the noise machine's job). Rates are flat across each
    bath's transition frequencies by default. The cold rate can follow a
    power law ``rate * omega ** cold_spectral_exponent`` for scaling studies
    near absolute zero, and the work rate likewise: an exponent of 1 makes
    the work bath's noise power flat across the split lines, which is the
    scaling under which its infinite-temperature limit reproduces the
    white-noise machine. Weak coupling is assumed: rates well below every
    level splitting, including the pair gap ``2 * epsilon``.
    """
    (t_h, g_h), (t_c, g_c), (t_w, g_w) = baths
    for name, (temp, rate) in zip(
        ("hot", "cold", "work"), ((t_h, g_h), (t_c, g_c), (t_w, g_w))
    ):
        if not math.isfinite(temp) or temp <= 0.0:
            raise ValueError(
                f"{name} bath temperature must be finite and positive; an "
                "infinite work temperature is the noise-driven variant"
            )
        if rate < 0.0:
            raise ValueError(f"{name} bath rate must be nonnegative")
    scale = _validated(omega_h, omega_c, nu, epsilon)
    energies, u = _table_frame(omega_h, omega_c, nu, epsilon)
    _guard_near_degeneracy(energies, scale)
    degenerate = any(
        energies[i] == energies[j] for i in range(8) for j in range(i + 1, 8)
    )
    if degenerate:
        # an exactly degenerate pair keeps a stationary coherence, so the
        # population-sector shortcut does not apply; solve the full generator
        gen, hamiltonian = _eigenframe_generator(
            omega_h,
            omega_c,
            nu,
            epsilon,
            {
                "hot": ("thermal", t_h, lambda w: g_h),
                "cold": ("thermal", t_c, lambda w: g_c * w**cold_spectral_exponent),
                "work": ("thermal", t_w, lambda w: g_w * w**work_spectral_exponent),
            },
        )
        currents = _solved_currents(gen, hamiltonian)
    else:
        specs = {
            "hot": (0, t_h, lambda w: g_h),
            "cold": (1, t_c, lambda w: g_c * w**cold_spectral_exponent),
            "work": (2, t_w, lambda w: g_w * w**work_spectral_exponent),
        }
        channel_blocks = {
            name: _davies_blocks(
                _flip_in_eigenbasis(u, qubit), energies, scale, temp, rate_fn
            )
            for name, (qubit, temp, rate_fn) in specs.items()
        }
        currents = _classical_currents(energies, channel_blocks)
    j_h, j_c, j_w = currents["hot"], currents["cold"], currents["work"]
    return assemble_report(
        power=0.0,
        heat_hot=j_h,
        heat_cold=j_c,
        T_h=t_h,
        T_c=t_c,
        heat_work=j_w,
        T_w=t_w,
        efficiency_or_cop=j_c / j_w if j_w != 0.0 else None,
        throughput_scale=max(g_h * omega_h, g_c * omega_c, g_w * nu),
    )


def three_qubit_noise_fridge(
    omega_h: float,
    omega_c: float,
    nu: float,
    epsilon: float,
    hot: tuple[float, float],
    cold: tuple[float, float],
    eta: float,
) -> CurrentsReport:
    """Three-qubit refrigerator with the work bath replaced by white noise.

    The noise shakes the work qubit's flip operator at strength ``eta``,
    which drives its transitions both ways at the same rate, exactly the
    infinite-temperature limit of a thermal work bath. The work current it
    injects carries no entropy.
    """
    (t_h, g_h), (t_c, g_c) = hot, cold
    if not (t_h > 0.0 and t_c > 0.0 and g_h >= 0.0 and g_c >= 0.0):
        raise ValueError("bath temperatures must be positive, rates nonnegative")
    if eta < 0.0:
        raise ValueError("noise strength must be nonnegative")
    gen, hamiltonian = _eigenframe_generator(
        omega_h,
        omega_c,
        nu,
        epsilon,
        {
            "hot": ("thermal", t_h, lambda w: g_h),
            "cold": ("thermal", t_c, lambda w: g_c),
            "work": ("noise", eta),
        },
    )
    currents = _solved_currents(gen, hamiltonian)
    j_h, j_c, j_w = currents["hot"], currents["cold"], currents["work"]
    return assemble_report(
        power=0.0,
        heat_hot=j_h,
        heat_cold=j_c,
        T_h=t_h,
        T_c=t_c,
        heat_work=j_w,
        T_w=math.inf,
        efficiency_or_cop=j_c / j_w if j_w != 0.0 else None,
        throughput_scale=max(g_h * omega_h, g_c * omega_c, 2.0 * eta * omega_h),
    )


def three_qubit_fridge_local(
    omega_h: float,
    omega_c: float,
    nu: float,
    epsilon: float,
    baths: tuple[tuple[float, float], tuple[float, float], tuple[float, float]],
    *,
    acknowledge_inconsistent: bool = False,
) -> dict[str, float]:
    """Local-dissipator variant: each bath thermalizes its bare qubit.

    This ignores the coupling when building the jump operators, which is
    known to break thermodynamic consistency (it can report negative entropy
    production). It exists for comparison studies only, must be enabled by
    passing ``acknowledge_inconsistent=True``, and returns a plain dict with
    no law enforcement.
    """
    if not acknowledge_inconsistent:
        raise ValueError(
            "the local construction is thermodynamically inconsistent; pass "
            "acknowledge_inconsistent=True to use it anyway"
        )
    scale = _validated(omega_h, omega_c, nu, epsilon)
    (t_h, g_h), (t_c, g_c), (t_w, g_w) = baths
    space = HilbertSpace(
        (("hot_qubit", 2), ("cold_qubit", 2), ("work_qubit", 2))
    )
    lower_local = np.array([[0.0, 1.0], [0.0, 0.0]])
    eye = np.eye(2)

    def embed(mats):
        return np.kron(np.kron(mats[0], mats[1]), mats[2])

    number_ops = []
    lower_ops = []
    for q in range(3):
        mats_n = [eye] * 3
        mats_n[q] = np.diag([0.0, 1.0])
        number_ops.append(embed(mats_n))
        mats_l = [eye] * 3
        mats_l[q] = lower_local
        lower_ops.append(Operator(space, embed(mats_l)))
    coupling = np.zeros((8, 8), dtype=complex)
    coupling[4, 3] = epsilon  # |100><011|
    hamiltonian = Operator(
        space,
        omega_h * number_ops[0]
        + omega_c * number_ops[1]
        + nu * number_ops[2]
        + coupling
        + coupling.conj().T,
        hermitian=True,
    )
    terms = []
    for q, (channel, omega, temp, rate) in enumerate(
        (
            ("hot", omega_h, t_h, g_h),
            ("cold", omega_c, t_c, g_c),
            ("work", nu, t_w, g_w),
        )
    ):
        n_occ = occupation(omega, temp)
        terms.append(LindbladTerm(lower_ops[q], rate * (n_occ + 1.0), channel))
        terms.append(LindbladTerm(lower_ops[q].dagger(), rate * n_occ, channel))
    gen = build_liouvillian(hamiltonian, terms)
    currents = _solved_currents(gen, hamiltonian)
    j_h, j_c, j_w = currents["hot"], currents["cold"], currents["work"]
    entropy = -j_h / t_h - j_c / t_c
    if math.isfinite(t_w):
        entropy -= j_w / t_w
    return {
        "J_h": j_h,
        "J_c": j_c,
        "J_w": j_w,
        "first_law_residual": j_h + j_c + j_w,
        "entropy_rate": entropy,
        "cop": j_c / j_w if j_w != 0.0 else math.nan,
    }
