"""Local HTTP server for the browser annotation tool.

Serves the UI bundle at / and a small JSON API under /api:

    GET  /api/frames                 frame list with annotation status
    GET  /api/frames/{id}/image      preprocessed frame as PNG
    GET  /api/frames/{id}/annotation stored annotation JSON (404 if none)
    PUT  /api/frames/{id}/annotation validate + persist atomically

Single-user tool: no auth, last write wins (writes serialized by a lock).
Frame ids are the manifest entry indices as strings.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from udderid import dataset_io
from udderid.dataset_io import Manifest
from udderid.errors import AnnotationError, UdderIdError
from udderid.imaging import encode_png

UI_DIR = Path(__file__).parent / "webui"

_MIME = {".html": "text/html", ".js": "text/javascript", ".css": "text/css",
         ".map": "application/json", ".svg": "image/svg+xml"}


class AnnotationService:
    """Manifest-backed state shared by all request threads."""

    def __init__(self, manifest: Manifest, ui_dir: Path = UI_DIR):
        self.manifest = manifest
        self.ui_dir = ui_dir
        self.write_lock = threading.Lock()

    def frame_list(self) -> list:
        return [
            {
                "id": str(i),
                "cow_id": e.cow_id,
                "day": e.day,
                "collection": self.manifest.collection,
                "has_image": e.image is not None,
                "annotated": e.annotation.is_file(),
            }
            for i, e in enumerate(self.manifest.entries)
        ]

    def entry(self, frame_id: str):
        try:
            idx = int(frame_id)
        except ValueError:
            return None
        if 0 <= idx < len(self.manifest.entries):
            return self.manifest.entries[idx]
        return None

    def image_png(self, entry) -> bytes:
        return encode_png(dataset_io.preprocessed_image(entry))

    def get_annotation(self, entry) -> dict | None:
        if not entry.annotation.is_file():
            return None
        return dataset_io.annotation_to_dict(
            dataset_io.load_annotation(entry.annotation)
        )

    def put_annotation(self, entry, payload: dict) -> dict:
        ann = dataset_io.annotation_from_dict(payload)  # raises AnnotationError
        with self.write_lock:
            dataset_io.save_annotation(ann, entry.annotation)
        return dataset_io.annotation_to_dict(ann)


class _Handler(BaseHTTPRequestHandler):
    service: AnnotationService  # set by make_server

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, body: bytes, content_type: str):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, obj) -> None:
        self._send(status, json.dumps(obj).encode("utf-8"), "application/json")

    def _api_route(self, method: str):
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        if parts[:1] != ["api"]:
            return None
        if parts == ["api", "frames"] and method == "GET":
            return lambda: self._send_json(200, self.service.frame_list())
        if len(parts) == 4 and parts[1] == "frames":
            entry = self.service.entry(parts[2])
            if entry is None:
                return lambda: self._send_json(404, {"error": "unknown frame"})
            if parts[3] == "image" and method == "GET":
                return lambda: self._handle_image(entry)
            if parts[3] == "annotation" and method == "GET":
                return lambda: self._handle_get_annotation(entry)
            if parts[3] == "annotation" and method == "PUT":
                return lambda: self._handle_put_annotation(entry)
        return lambda: self._send_json(404, {"error": "no such endpoint"})

    def _handle_image(self, entry):
        try:
            self._send(200, self.service.image_png(entry), "image/png")
        except (FileNotFoundError, UdderIdError) as exc:
            self._send_json(404, {"error": str(exc)})

    def _handle_get_annotation(self, entry):
        try:
            doc = self.service.get_annotation(entry)
        except AnnotationError as exc:
            self._send_json(500, {"error": str(exc), "code": exc.code})
            return
        if doc is None:
            self._send_json(404, {"error": "frame not annotated yet"})
        else:
            self._send_json(200, doc)

    def _handle_put_annotation(self, entry):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length)
        try:
            payload = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            self._send_json(400, {"error": "body is not valid JSON",
                                  "code": "parse-error"})
            return
        try:
            saved = self.service.put_annotation(entry, payload)
        except AnnotationError as exc:
            self._send_json(400, {"error": str(exc), "code": exc.code})
            return
        self._send_json(200, saved)

    def _serve_ui(self):
        rel = self.path.split("?")[0].lstrip("/") or "index.html"
        target = (self.service.ui_dir / rel).resolve()
        if not str(target).startswith(str(self.service.ui_dir.resolve())) \
                or not target.is_file():
            self._send_json(404, {"error": "not found"})
            return
        mime = _MIME.get(target.suffix, "application/octet-stream")
        self._send(200, target.read_bytes(), mime)

    def do_GET(self):
        route = self._api_route("GET")
        if route is not None:
            route()
        else:
            self._serve_ui()

    def do_PUT(self):
        route = self._api_route("PUT")
        if route is not None:
            route()
        else:
            self._send_json(404, {"error": "no such endpoint"})


def make_server(manifest: Manifest, port: int,
                ui_dir: Path = UI_DIR) -> ThreadingHTTPServer:
    service = AnnotationService(manifest, ui_dir)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve_forever(manifest: Manifest, port: int, ui_dir: Path = UI_DIR) -> None:
    httpd = make_server(manifest, port, ui_dir)
    host, actual_port = httpd.server_address
    print(f"annotation server on http://{host}:{actual_port}/ "
          f"({len(manifest.entries)} frames)", flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
