# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Evaluate a function over many words on worker threads, keeping order."""

import multiprocessing
import os
import queue
import threading
from typing import Callable, Iterable, List, Sequence, TypeVar

from .systems import Word

__all__ = ["resolve_threads", "map_words"]

T = TypeVar("T")


def resolve_threads(threads: int) -> int:
    """Number of worker threads; ``threads < 0`` means every available CPU.
    """
    if threads >= 0:
        return threads
    try:
        return len(os.sched_getaffinity(0))
    except:  # noqa: E722
        try:
            return multiprocessing.cpu_count()
        except:  # noqa: E722
            return 1


class _WorkerError:
    __slots__ = ("error",)

    def __init__(self, error: BaseException):
        self.error = error


class _ThreadedWordEvaluator:
    """
    Each worker gets its own input and output queue. A feeder thread puts
    word ``i`` in input queue ``i % threads``; the caller reads output
    queues in the same round-robin order, so results come back in input
    order without sorting.
    """

    def __init__(self, func: Callable[[Word], T], words: Sequence[Word],
                 threads: int, queue_size: int = 64):
        if threads < 1:
            raise ValueError(f"threads should be at least 1, got {threads}")
        self.func = func
        self.words = words
        self.threads = threads
        self.input_queues: List[queue.Queue] = [
            queue.Queue(queue_size) for _ in range(threads)]
        self.output_queues: List[queue.Queue] = [
            queue.Queue(queue_size) for _ in range(threads)]
        self.running = False
        self.feeder = threading.Thread(target=self._feed, daemon=True)
        self.workers = [
            threading.Thread(target=self._evaluate, args=(i,), daemon=True)
            for i in range(threads)
        ]

    def start(self):
        self.running = True
        self.feeder.start()
        for worker in self.workers:
            worker.start()

    def stop(self):
        """Stop, but do not care for remaining work"""
        self.running = False
        self.feeder.join()
        for worker in self.workers:
            worker.join()

    def _feed(self):
        for index, word in enumerate(self.words):
            if not self.running:
                return
            in_queue = self.input_queues[index % self.threads]
            while True:
                try:
                    in_queue.put(word, timeout=0.05)
                    break
                except queue.Full:
                    if not self.running:
                        return

    def _evaluate(self, index: int):
        in_queue = self.input_queues[index]
        out_queue = self.output_queues[index]
        while True:
            try:
                word = in_queue.get(timeout=0.05)
            except queue.Empty:
                if not self.running:
                    return
                continue
            try:
                result = self.func(word)
            except Exception as e:
                result = _WorkerError(e)
            while True:
                try:
                    out_queue.put(result, timeout=0.05)
                    break
                except queue.Full:
                    if not self.running:
                        return

    def results(self) -> List[T]:
        collected = []
        try:
            for index in range(len(self.words)):
                result = self.output_queues[index % self.threads].get()
                if isinstance(result, _WorkerError):
                    raise result.error
                collected.append(result)
        finally:
            self.stop()
        return collected


def map_words(func: Callable[[Word], T], words: Iterable[Word],
              threads: int = 0) -> List[T]:
    """Return ``[func(w) for w in words]``, computed on worker threads.

    threads == 0 evaluates in the calling thread. A threads < 0 will use
    the number of threads available to the process.
    """
    items = list(words)
    threads = resolve_threads(threads)
    if threads == 0 or len(items) < 2:
        return [func(word) for word in items]
    evaluator = _ThreadedWordEvaluator(func, items,
                                       min(threads, len(items)))
    evaluator.start()
    return evaluator.results()
