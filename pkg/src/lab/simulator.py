"""
Deterministic living-lab simulation over precomputed runs.

Every session draws from its own child random stream derived from (seed, session
number), so sessions can be simulated in any order with identical results.
"""

import logging

import numpy as np

from configuration import LabSettings
from exceptions import DataError
from lab.click_model import ClickModel
from lab.interleaving import team_draft_interleave
from lab.session import SessionOutcome, simulate_session
from query.run import Run


def session_rng(seed: int, session_number: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, session_number]))


def system_names(runs: list[Run]) -> list[str]:
    names = []
    for position, run in enumerate(runs):
        name = run.tag
        if name in names:
            name = f"{run.tag}-{position}"
        names.append(name)
    return names


def simulate_lab(
    baseline: Run, experimental: list[Run], settings: LabSettings, model: ClickModel | None = None
) -> list[SessionOutcome]:
    """
    Interleave the baseline with each experimental run in turn (round robin over
    sessions), so the baseline takes part in every session.
    """
    if not experimental:
        raise DataError("At least one experimental run is needed for a lab simulation")
    model = model or ClickModel.from_settings(settings)
    if len(model) < settings.page_size:
        raise DataError(f"Click model covers {len(model)} positions, page size is {settings.page_size}")

    names = system_names([baseline, *experimental])
    pairings = []
    for run, name in zip(experimental, names[1:]):
        shared = sorted(
            query_id
            for query_id in set(baseline.rankings) & set(run.rankings)
            if baseline.rankings[query_id] or run.rankings[query_id]
        )
        if not shared:
            raise DataError(f"Runs '{baseline.tag}' and '{run.tag}' share no queries with results")
        pairings.append((run, name, shared))

    outcomes = []
    for session_number in range(settings.sessions):
        rng = session_rng(settings.seed, session_number)
        run, name, shared = pairings[session_number % len(pairings)]
        query_id = shared[int(rng.integers(len(shared)))]
        interleaved = team_draft_interleave(
            baseline.doc_ids(query_id), run.doc_ids(query_id), settings.page_size, rng, names[0], name
        )
        outcomes.append(simulate_session(interleaved, model, rng, f"s{session_number:06d}", query_id))

    logging.info(f"Simulated {len(outcomes)} sessions for {len(experimental)} experimental systems")
    return outcomes
