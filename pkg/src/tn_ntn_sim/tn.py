"""Terrestrial layer: load-aware association, shared-bandwidth Shannon rates
and load-dependent latency."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import SPEED_OF_LIGHT_M_S, dbm_to_mw, hata_path_loss, noise_power_dbm
from .errors import ConfigurationError
from .params import TnParams
from .scenario import GnbSite, UserTerminal

# load-dependent queue utilization is capped to keep the M/M/1 term finite
RHO_CAP = 0.95


@dataclass
class TnAssociation:
    user_id: int
    gnb_id: int
    score_db: float
    sinr_db: float


@dataclass
class TnLoadState:
    counts: np.ndarray  # per-gNB attached-user counts, full layout length
    l_max: int


class TnChannelState:
    """Per-run terrestrial channel realization: fixed distances, path loss and
    shadowing for every (user, gNB) pair. SINR against any active subset is
    derived from the same received-power matrix."""

    def __init__(self, users: list[UserTerminal], gnbs: list[GnbSite],
                 params: TnParams, shadowing_db: np.ndarray):
        self.params = params
        upos = np.array([[u.pos.x, u.pos.y] for u in users]).reshape(len(users), 2)
        gpos = np.array([[g.pos.x, g.pos.y] for g in gnbs]).reshape(len(gnbs), 2)
        self.distance_m = np.hypot(upos[:, None, 0] - gpos[None, :, 0],
                                   upos[:, None, 1] - gpos[None, :, 1])
        self.path_loss_db = hata_path_loss(np.maximum(self.distance_m, 1.0), params)
        self.shadowing_db = shadowing_db
        tx = np.array([g.tx_power_dbm for g in gnbs])
        self.rx_dbm = tx[None, :] - self.path_loss_db - shadowing_db
        self.rx_mw = dbm_to_mw(self.rx_dbm)
        self.noise_mw = float(dbm_to_mw(noise_power_dbm(params.bandwidth_hz,
                                                        params.noise_figure_db)))

    def sinr_db(self, active: np.ndarray) -> np.ndarray:
        """Per-user SINR versus each active candidate, with every other
        active gNB interfering at full power. Shape (K, n_active)."""
        p = self.rx_mw[:, active]
        total = p.sum(axis=1, keepdims=True)
        return 10.0 * np.log10(p / (total - p + self.noise_mw))


def load_penalty_db(load: int, l_max: int) -> float:
    """Congestion penalty 20 log10(1 + load / l_max)."""
    if l_max <= 0:
        raise ConfigurationError("l_max must be positive")
    if load < 0:
        raise ValueError("load must be >= 0")
    return float(20.0 * np.log10(1.0 + load / l_max))


def associate_users(user_ids, state: TnChannelState, active: np.ndarray,
                    l_max: int, initial_loads: np.ndarray | None = None):
    """Sequential greedy load-aware association.

    Users are processed in the given (ascending-id) order; each attaches to
    the argmax of SINR minus the current load penalty, ties broken by lowest
    gNB id, and the winner's load counter increments immediately.

    Returns (associations, load_state); associations is empty when no gNB is
    active.
    """
    if l_max <= 0:
        raise ConfigurationError("l_max must be positive")
    active = np.asarray(active, dtype=bool)
    act_idx = np.flatnonzero(active)
    n_total = len(active)
    if act_idx.size == 0:
        return [], TnLoadState(np.zeros(n_total, dtype=int), l_max)
    sinr = state.sinr_db(active)
    loads = (np.zeros(act_idx.size, dtype=int) if initial_loads is None
             else np.asarray(initial_loads, dtype=int)[act_idx].copy())
    user_ids = list(user_ids)
    k_bound = loads.sum() + len(user_ids)
    penalty_table = 20.0 * np.log10(1.0 + np.arange(k_bound + 1) / l_max)
    assocs = []
    for u in user_ids:
        scores = sinr[u] - penalty_table[loads]
        b = int(np.argmax(scores))
        assocs.append(TnAssociation(user_id=u, gnb_id=int(act_idx[b]),
                                    score_db=float(scores[b]),
                                    sinr_db=float(sinr[u, b])))
        loads[b] += 1
    counts = np.zeros(n_total, dtype=int)
    counts[act_idx] = loads
    if initial_loads is not None:
        counts[act_idx] -= np.asarray(initial_loads, dtype=int)[act_idx]
    return assocs, TnLoadState(counts, l_max)


def tn_user_rate(user_sinr_db: float, cell_load: int, bandwidth_hz: float) -> float:
    """Shannon rate over the cell's equally shared bandwidth."""
    if cell_load < 1:
        raise ValueError("cell_load must be >= 1")
    return bandwidth_hz / cell_load * float(np.log2(1.0 + 10.0 ** (user_sinr_db / 10.0)))


def tn_user_latency(distance_m: float, cell_load: int, params: TnParams) -> float:
    """Propagation + processing + M/M/1-shaped queueing delay."""
    if cell_load < 0:
        raise ValueError("cell_load must be >= 0")
    rho = min(cell_load / params.l_max_users, RHO_CAP)
    queue = params.queue_delay_base_s * rho / (1.0 - rho)
    return distance_m / SPEED_OF_LIGHT_M_S + params.processing_delay_s + queue


def tn_kpis(assocs: list[TnAssociation], users: list[UserTerminal],
            load_state: TnLoadState, state: TnChannelState, tau_db: float) -> None:
    """Fill per-user rate, latency and reception indicator for a TN-served
    subset. Reception requires SINR strictly above tau."""
    for a in assocs:
        u = users[a.user_id]
        load = int(load_state.counts[a.gnb_id])
        u.serving_layer = "TN"
        u.serving_node = a.gnb_id
        u.sinr_db = a.sinr_db
        u.rate_bps = tn_user_rate(a.sinr_db, load, state.params.bandwidth_hz)
        u.latency_s = tn_user_latency(float(state.distance_m[a.user_id, a.gnb_id]),
                                      load, state.params)
        u.received = a.sinr_db > tau_db
