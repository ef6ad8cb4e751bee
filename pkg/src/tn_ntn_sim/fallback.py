"""Static post-failure snapshot pipeline: pre-failure attachment, failure
sampling, forced and proactive migration onto the satellite overlay, penalty
application and system-level KPI aggregation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import shadowing_db
from .errors import ConfigurationError
from .ntn import apply_feeder_constraint, ntn_associate, ntn_user_rate_latency, place_constellation
from .params import Mode
from .scenario import GnbSite, Scenario, UserTerminal, generate_gnb_layout, generate_users
from .tn import TnChannelState, associate_users, tn_kpis


@dataclass
class SnapshotKpis:
    """Aggregate KPIs of one Monte Carlo run."""

    sys_throughput_bps: float
    per_user_throughput_bps: float
    prr: float
    mean_latency_s: float
    fallback_ratio: float
    n_active_gnbs: int
    n_tn_users: int
    n_ntn_users: int
    n_unserved: int


@dataclass
class RunStreams:
    """Independent random streams for one run, split by purpose so that modes
    consuming different subsets of them stay pairwise comparable."""

    layout: np.random.Generator
    users: np.random.Generator
    shadowing: np.random.Generator
    failures: np.random.Generator
    constellation: np.random.Generator


def derive_streams(master_seed: int, run_index: int) -> RunStreams:
    ss = np.random.SeedSequence(master_seed, spawn_key=(run_index,))
    children = ss.spawn(5)
    return RunStreams(*(np.random.default_rng(c) for c in children))


def sample_failures(gnbs: list[GnbSite], p_f: float,
                    rng: np.random.Generator) -> np.ndarray:
    """Mark each site failed independently with probability p_f; returns the
    active-site boolean mask."""
    if not 0.0 <= p_f <= 1.0:
        raise ConfigurationError("p_f must be in [0, 1]")
    active = rng.random(len(gnbs)) >= p_f
    for g, a in zip(gnbs, active):
        g.active = bool(a)
    return active


def aggregate_kpis(users: list[UserTerminal], k: int, tau_db: float,
                   n_active_gnbs: int) -> SnapshotKpis:
    """System KPIs over all K users. Unserved users count in the throughput
    and PRR denominators with zero contribution; the latency mean runs over
    served users only."""
    if k <= 0:
        raise ConfigurationError("K must be >= 1 for KPI aggregation")
    served = [u for u in users if u.serving_layer != "NONE"]
    n_tn = sum(1 for u in served if u.serving_layer == "TN")
    n_ntn = sum(1 for u in served if u.serving_layer == "NTN")
    r_sys = sum(u.rate_bps for u in served)
    prr = sum(1 for u in served if u.received) / k
    mean_lat = sum(u.latency_s for u in served) / len(served) if served else 0.0
    return SnapshotKpis(
        sys_throughput_bps=r_sys,
        per_user_throughput_bps=r_sys / k,
        prr=prr,
        mean_latency_s=mean_lat,
        fallback_ratio=n_ntn / k,
        n_active_gnbs=n_active_gnbs,
        n_tn_users=n_tn,
        n_ntn_users=n_ntn,
        n_unserved=k - n_tn - n_ntn,
    )


def _build_geometry(scenario: Scenario, streams: RunStreams):
    gnbs = generate_gnb_layout(scenario, streams.layout)
    users = generate_users(scenario, gnbs, streams.users)
    return gnbs, users


def _tn_channel(scenario: Scenario, users, gnbs, streams: RunStreams) -> TnChannelState:
    shadow = shadowing_db(streams.shadowing, scenario.tn.shadowing_sigma_db,
                          (len(users), len(gnbs)))
    return TnChannelState(users, gnbs, scenario.tn, shadow)


def _serve_ntn(scenario: Scenario, users: list[UserTerminal],
               user_ids: list[int], sats, migration: bool) -> None:
    """Associate the given users with the overlay, apply per-user rate/latency,
    the migration penalty when requested, and the feeder constraint."""
    if not user_ids:
        return
    d = scenario.disaster
    center = np.array([scenario.area_side_m / 2.0, scenario.area_side_m / 2.0])
    pos = np.array([[users[i].pos.x, users[i].pos.y] for i in user_ids])
    links = ntn_associate(pos, center, sats, scenario.ntn)
    loads = np.zeros(len(sats), dtype=int)
    for link in links:
        if link.sat_id is not None:
            loads[link.sat_id] += 1
    for s, n in zip(sats, loads):
        s.load = int(n)
    served_ids, rates, lats = [], [], []
    for uid, link in zip(user_ids, links):
        u = users[uid]
        if link.sat_id is None:
            u.serving_layer = "NONE"
            continue
        rate, lat = ntn_user_rate_latency(link, int(loads[link.sat_id]), scenario.ntn)
        if migration:
            rate *= 1.0 - d.migration_thr_penalty
            lat += d.migration_lat_penalty_s
        u.serving_layer = "NTN"
        u.serving_node = link.sat_id
        u.sinr_db = link.sinr_db
        u.received = link.sinr_db > d.tau_db
        served_ids.append(uid)
        rates.append(rate)
        lats.append(lat)
    if served_ids:
        rates, lats, _ = apply_feeder_constraint(np.array(rates), np.array(lats),
                                                 scenario.ntn)
        for uid, r, l in zip(served_ids, rates, lats):
            users[uid].rate_bps = float(r)
            users[uid].latency_s = float(l)


def run_tn_snapshot(scenario: Scenario, streams: RunStreams):
    gnbs, users = _build_geometry(scenario, streams)
    state = _tn_channel(scenario, users, gnbs, streams)
    active_ids = [u.id for u in users if u.active]
    assocs, load_state = associate_users(active_ids, state,
                                         np.ones(len(gnbs), dtype=bool),
                                         scenario.tn.l_max_users)
    tn_kpis(assocs, users, load_state, state, scenario.disaster.tau_db)
    kpis = aggregate_kpis(users, scenario.n_users, scenario.disaster.tau_db,
                          n_active_gnbs=len(gnbs))
    return kpis, users


def run_ntn_snapshot(scenario: Scenario, streams: RunStreams):
    gnbs, users = _build_geometry(scenario, streams)
    sats = place_constellation(scenario.ntn, streams.constellation)
    active_ids = [u.id for u in users if u.active]
    _serve_ntn(scenario, users, active_ids, sats, migration=False)
    kpis = aggregate_kpis(users, scenario.n_users, scenario.disaster.tau_db,
                          n_active_gnbs=len(gnbs))
    return kpis, users


def run_disaster_snapshot(scenario: Scenario, streams: RunStreams):
    """Full degraded-snapshot workflow.

    Pre-failure attachment, failure sampling, forced overlay handover for
    users on failed sites, a fresh load-aware re-evaluation of the survivors,
    eta-controlled proactive offload of weak or overloaded users, final TN
    re-association with reassociation penalties, overlay service with
    migration penalties and the feeder cap, then system aggregation.

    Proactive offload only engages when at least one site actually failed:
    with an intact layout there is no degraded snapshot to relieve, and the
    realized fallback ratio stays exactly zero at p_f = 0.
    """
    d = scenario.disaster
    gnbs, users = _build_geometry(scenario, streams)
    state = _tn_channel(scenario, users, gnbs, streams)
    sats = place_constellation(scenario.ntn, streams.constellation)
    active_ids = [u.id for u in users if u.active]

    # (a) nominal pre-failure attachment over the full layout
    pre_assocs, _ = associate_users(active_ids, state,
                                    np.ones(len(gnbs), dtype=bool),
                                    scenario.tn.l_max_users)
    pre_gnb = {a.user_id: a.gnb_id for a in pre_assocs}

    # (b) failure sampling
    active_mask = sample_failures(gnbs, d.p_f, streams.failures)
    n_failed = int((~active_mask).sum())

    # (c) forced handover of users whose serving site failed
    forced, remaining = [], []
    for uid in active_ids:
        if not active_mask[pre_gnb[uid]]:
            users[uid].forced_fallback = True
            forced.append(uid)
        else:
            remaining.append(uid)

    # (d) provisional re-evaluation of survivors on the degraded layout
    proactive: list[int] = []
    retained = remaining
    if remaining and active_mask.any():
        prov_assocs, _ = associate_users(remaining, state, active_mask,
                                         scenario.tn.l_max_users)
        # (e) proactive offload of weak or overloaded survivors.  A cell
        # above l_max contributes only its excess head-count (its weakest
        # attachments); flagging the whole cell would dump far more users on
        # the overlay than the congestion actually warrants.
        if n_failed > 0 and d.eta_cfg > 0:
            weak_thr = d.tau_db + d.weak_margin_db
            candidates = {a.user_id: a for a in prov_assocs
                          if a.score_db < weak_thr}
            by_cell: dict[int, list] = {}
            for a in prov_assocs:
                by_cell.setdefault(a.gnb_id, []).append(a)
            for cell_assocs in by_cell.values():
                excess = len(cell_assocs) - scenario.tn.l_max_users
                if excess > 0:
                    cell_assocs.sort(key=lambda a: (a.score_db, a.user_id))
                    for a in cell_assocs[:excess]:
                        candidates[a.user_id] = a
            ordered = sorted(candidates.values(),
                             key=lambda a: (a.score_db, a.user_id))
            n_off = math.ceil(d.eta_cfg * len(ordered))
            proactive = [a.user_id for a in ordered[:n_off]]
            for uid in proactive:
                users[uid].proactive_fallback = True
            proactive_set = set(proactive)
            retained = [uid for uid in remaining if uid not in proactive_set]

    # (f) final TN association of retained users, with reassociation penalties
    if retained and active_mask.any():
        final_assocs, final_loads = associate_users(retained, state, active_mask,
                                                    scenario.tn.l_max_users)
        tn_kpis(final_assocs, users, final_loads, state, d.tau_db)
        for a in final_assocs:
            u = users[a.user_id]
            if a.gnb_id != pre_gnb[a.user_id]:
                u.reassociated = True
                u.rate_bps *= 1.0 - d.reassoc_thr_penalty
                u.latency_s += d.reassoc_lat_penalty_s
    elif retained:
        forced = forced + retained  # no surviving site: everyone falls back
        for uid in retained:
            users[uid].forced_fallback = True
        forced.sort()

    # (g) overlay service for the fallback subset
    _serve_ntn(scenario, users, forced + proactive, sats, migration=True)

    # (h) aggregation
    kpis = aggregate_kpis(users, scenario.n_users, d.tau_db,
                          n_active_gnbs=int(active_mask.sum()))
    return kpis, users


def run_snapshot(scenario: Scenario, streams: RunStreams):
    scenario.validate()
    if scenario.mode == Mode.TN:
        return run_tn_snapshot(scenario, streams)
    if scenario.mode == Mode.NTN:
        return run_ntn_snapshot(scenario, streams)
    return run_disaster_snapshot(scenario, streams)
