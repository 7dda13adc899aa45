# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

import logging
import threading
import queue
import traceback

from latticeprobe.latticeprobeconfig import get_thread_count


class Worker():
    """Pool of daemon threads fed from one queue.

    Commands run in whatever thread picks them up; callbacks and errorbacks
    are called from that thread too.
    """

    def __init__(self, threads=1):
        self.queue = queue.Queue()
        self.threads = []
        for i in range(threads):
            thread = threading.Thread(target=self._run, name="latticeprobe-worker-%d" % i)
            thread.daemon = True
            thread.start()
            self.threads.append(thread)

    def _run(self):
        while True:
            command, args, callback, errorback = self.queue.get()
            if command is None:
                break
            try:
                result = command(*args)
                if callback:
                    callback(result)
            except Exception as e:
                e.traceback = traceback.format_exc()
                if errorback:
                    errorback(e)

    def send(self, command, args=(), callback=None, errorback=None):
        if errorback is None: errorback = self._default_errorback
        self.queue.put((command, args, callback, errorback))

    def map(self, func, items):
        """Apply func to every item, returning results in input order.

        The first exception raised by any call is re-raised here.
        """
        items = list(items)
        # nested maps from inside a task would starve the pool
        if len(self.threads) <= 1 or len(items) <= 1 or threading.current_thread() in self.threads:
            return [func(item) for item in items]

        results = [None] * len(items)
        errors = []
        remaining = [len(items)]
        done = threading.Condition()

        def finish():
            with done:
                remaining[0] -= 1
                if remaining[0] == 0:
                    done.notify_all()

        def make_callbacks(index):
            def callback(result):
                results[index] = result
                finish()
            def errorback(error):
                errors.append(error)
                finish()
            return callback, errorback

        for index, item in enumerate(items):
            callback, errorback = make_callbacks(index)
            self.send(func, (item,), callback, errorback)

        with done:
            while remaining[0]:
                done.wait()
        if errors:
            logging.debug("Worker task failed:\n%s", errors[0].traceback)
            raise errors[0]
        return results

    def stop(self):
        for thread in self.threads:
            self.queue.put((None, (), None, None))

    def _default_errorback(self, error):
        logging.error("Unhandled exception in worker thread:\n{}".format(error.traceback))


_worker = None
_threads = None
_worker_lock = threading.Lock()

def set_thread_count(threads):
    global _threads
    _threads = get_thread_count(threads)

def get_worker():
    """Shared worker sized from --threads, else LATTICEPROBE_THREADS."""
    global _worker
    with _worker_lock:
        wanted = _threads if _threads is not None else get_thread_count()
        if _worker is None or len(_worker.threads) != wanted:
            if _worker is not None:
                _worker.stop()
            _worker = Worker(wanted)
        return _worker
