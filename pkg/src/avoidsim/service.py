"""Local TCP control/streaming service around a LiveSession.

Newline-delimited JSON both ways: clients send control messages, the server
broadcasts one tick object per frame plus a state object on connect and after
profile changes. The engine loop owns all mutable state; client readers only
enqueue messages and slow subscribers drop frames rather than block the loop.
"""

from __future__ import annotations

import json
import logging
import queue
import socket
import socketserver
import threading
import time

from .engine import ControlError, LiveSession

logger = logging.getLogger(__name__)

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 9763
SUBSCRIBER_QUEUE_SIZE = 256


class _Subscriber:
    def __init__(self):
        self.queue: queue.Queue = queue.Queue(maxsize=SUBSCRIBER_QUEUE_SIZE)
        self.dropped = 0

    def offer(self, item: str):
        while True:
            try:
                self.queue.put_nowait(item)
                return
            except queue.Full:
                try:
                    self.queue.get_nowait()
                    self.dropped += 1
                except queue.Empty:
                    pass


class EngineServer:
    """Ticks a LiveSession on a wall-clock cadence and serves NDJSON clients."""

    def __init__(self, session: LiveSession, host=DEFAULT_HOST, port=DEFAULT_PORT):
        self.session = session
        self.mailbox: queue.Queue = queue.Queue(maxsize=1024)
        self.subscribers: list[_Subscriber] = []
        self._lock = threading.Lock()
        self._stop = threading.Event()

        server_self = self

        class Handler(socketserver.StreamRequestHandler):
            def handle(self):
                sub = _Subscriber()
                with server_self._lock:
                    server_self.subscribers.append(sub)
                sub.offer(json.dumps(server_self.session.state_message()))
                writer = threading.Thread(
                    target=server_self._writer_loop, args=(sub, self.connection),
                    daemon=True,
                )
                writer.start()
                try:
                    for raw in self.rfile:
                        line = raw.decode("utf-8", errors="replace").strip()
                        if not line:
                            continue
                        server_self._handle_line(line, sub)
                except (ConnectionError, OSError):
                    pass
                finally:
                    with server_self._lock:
                        if sub in server_self.subscribers:
                            server_self.subscribers.remove(sub)
                    sub.offer(None)  # type: ignore[arg-type]

        class Server(socketserver.ThreadingTCPServer):
            allow_reuse_address = True
            daemon_threads = True

        self._tcp = Server((host, port), Handler)
        self.address = self._tcp.server_address

    def _handle_line(self, line: str, sub: _Subscriber):
        try:
            message = json.loads(line)
        except json.JSONDecodeError:
            sub.offer(json.dumps({"type": "error", "message": "invalid JSON"}))
            return
        self.mailbox.put((message, sub))

    def _writer_loop(self, sub: _Subscriber, conn: socket.socket):
        try:
            while True:
                item = sub.queue.get()
                if item is None:
                    return
                conn.sendall(item.encode() + b"\n")
        except (ConnectionError, OSError):
            pass

    def _broadcast(self, obj: dict):
        line = json.dumps(obj)
        with self._lock:
            subs = list(self.subscribers)
        for sub in subs:
            sub.offer(line)

    def _drain_mailbox(self):
        state_changed = False
        while True:
            try:
                message, sub = self.mailbox.get_nowait()
            except queue.Empty:
                break
            try:
                ack = self.session.submit(message)
                sub.offer(json.dumps(ack))
                if message.get("type") in ("set_profile", "set_dominance", "reset"):
                    state_changed = True
            except ControlError as exc:
                sub.offer(json.dumps({"type": "error", "message": str(exc)}))
        return state_changed

    def _tick_loop(self):
        period_s = self.session.config.frame_period_ms / 1000.0
        next_deadline = time.monotonic()
        while not self._stop.is_set():
            state_changed = self._drain_mailbox()
            event = self.session.tick()
            if state_changed:
                self._broadcast(self.session.state_message())
            self._broadcast(event.to_wire())
            next_deadline += period_s
            delay = next_deadline - time.monotonic()
            if delay > 0:
                self._stop.wait(delay)
            else:
                next_deadline = time.monotonic()  # fell behind; resync

    def start(self):
        threading.Thread(target=self._tcp.serve_forever, daemon=True).start()
        threading.Thread(target=self._tick_loop, daemon=True).start()

    def serve_forever(self):
        self.start()
        try:
            while not self._stop.is_set():
                time.sleep(0.5)
        except KeyboardInterrupt:
            pass
        finally:
            self.stop()

    def stop(self):
        self._stop.set()
        self._tcp.shutdown()
        self._tcp.server_close()
