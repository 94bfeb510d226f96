"""Ordered fan-out of independent experiment tasks."""

import logging
from concurrent.futures import ProcessPoolExecutor

logger = logging.getLogger(__name__)


def run_tasks(fn, tasks, jobs=1):
    """
    Apply fn to every task and return the results in task order.

    Args:
        fn (Callable): Picklable top-level function.
        tasks (Iterable): Task arguments, one per call.
        jobs (int, optional): Worker processes; 1 or less runs inline.

    Returns:
        list: fn(task) for every task, in the order of tasks.
    """
    tasks = list(tasks)
    jobs = 1 if jobs is None else int(jobs)
    if jobs <= 1 or len(tasks) <= 1:
        logger.debug(f"Running {len(tasks)} tasks inline")
        return [fn(task) for task in tasks]

    workers = min(jobs, len(tasks))
    logger.debug(f"Running {len(tasks)} tasks on {workers} worker processes")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, tasks))
