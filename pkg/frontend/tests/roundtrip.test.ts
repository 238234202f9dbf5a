/** Live round trip against `udderid annotate-serve`: draw 4 teats + udder
 * on a served synthetic frame through the app's own store/editor/api
 * modules, save, reload, and compare coordinate-exactly; then check the
 * persisted file loads through the Python-side annotation loader.
 *
 * (No browser binary is available in this environment, so the pointer
 * gestures are driven programmatically through the same EditorState the
 * canvas layer uses.)
 */

import { ChildProcess, execFileSync, spawn } from 'node:child_process';
import { mkdtempSync, readdirSync, rmSync, unlinkSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { AnnotationApi, ApiError } from '../src/api.js';
import { ViewTransform } from '../src/coords.js';
import { AnnotationDraft } from '../src/draft.js';
import { EditorState } from '../src/editor.js';

const PYTHON = process.env.UDDERID_PYTHON ?? 'python3';

let workDir: string;
let manifestPath: string;
let annotationDir: string;
let server: ChildProcess;
let api: AnnotationApi;

function waitForServer(proc: ChildProcess): Promise<string> {
  return new Promise((resolve, reject) => {
    let buffer = '';
    const timer = setTimeout(
      () => reject(new Error(`server did not start:\n${buffer}`)), 20000);
    proc.stdout!.on('data', (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/annotation server on (http:\/\/[\d.]+:\d+)\//);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    proc.on('exit', (code) =>
      reject(new Error(`server exited early (${code}):\n${buffer}`)));
  });
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), 'udderid-ui-'));
  execFileSync(PYTHON, ['-m', 'udderid.cli', 'synth', '--count', '2',
                        '--seed', '31', '--render', '--out-dir', workDir]);
  manifestPath = join(workDir, 'collection1', 'manifest.json');
  annotationDir = join(workDir, 'collection1', 'annotations');
  // start from unannotated frames, as a human coder would
  for (const name of readdirSync(annotationDir)) {
    unlinkSync(join(annotationDir, name));
  }
  server = spawn(PYTHON, ['-u', '-m', 'udderid.cli', 'annotate-serve',
                          '--manifest', manifestPath, '--port', '0']);
  const base = await waitForServer(server);
  api = new AnnotationApi(base);
}, 30000);

afterAll(() => {
  server?.kill();
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

describe('annotation round trip against the live server', () => {
  it('draws, saves, reloads coordinate-exactly, and the file passes the loader', async () => {
    const frames = await api.listFrames();
    expect(frames.length).toBe(4); // 2 cows x 2 days
    expect(frames.every((f) => !f.annotated)).toBe(true);
    const frame = frames[0];
    expect(await api.getAnnotation(frame.id)).toBeNull();

    // the same screen->image mapping the canvas uses, at an awkward zoom
    const view = new ViewTransform();
    view.scale = 1.7;
    view.offsetX = 23;
    view.offsetY = -11;
    const editor = new EditorState(new AnnotationDraft(frame.id));
    const gestures: [number, number, number, number][] = [
      [120.0, 90.0, 160.5, 140.25], // LF
      [220.0, 90.5, 262.0, 141.0],  // RF
      [221.5, 200.0, 260.0, 250.5], // RR
      [118.0, 201.0, 159.0, 252.0], // LR
      [80.0, 60.0, 320.0, 300.0],   // udder
    ];
    for (const [x0, y0, x1, y1] of gestures) {
      const down = view.imageToScreen({ x: x0, y: y0 });
      const up = view.imageToScreen({ x: x1, y: y1 });
      editor.pointerDown(view.screenToImage(down), 6 / view.scale);
      editor.pointerMove(view.screenToImage(up));
      editor.pointerUp(view.screenToImage(up));
    }
    expect(editor.draft.isComplete()).toBe(true);

    const doc = editor.draft.toDoc(`${frame.cow_id}_c1_d${frame.day}`);
    const saved = await api.putAnnotation(frame.id, doc);
    editor.draft.dirty = false;

    // reload as the editor does on reopen; boxes must be coordinate-exact
    const reloaded = await api.getAnnotation(frame.id);
    expect(reloaded).not.toBeNull();
    expect(reloaded).toEqual(saved);
    const rerendered = AnnotationDraft.fromDoc(frame.id, reloaded!);
    for (const box of editor.draft.boxes) {
      expect(rerendered.box(box.slot)!.rect).toEqual(box.rect);
    }

    // badge flips to done
    const after = await api.listFrames();
    expect(after.find((f) => f.id === frame.id)!.annotated).toBe(true);

    // the persisted file passes the Python loader and reproduces the rects
    const annPath = join(annotationDir, `${frame.cow_id}_c1_d${frame.day}.json`);
    const printed = execFileSync(PYTHON, ['-c', `
import json, sys
from udderid.dataset_io import load_annotation
ann = load_annotation(sys.argv[1])
print(json.dumps({t.position: [t.x, t.y, t.w, t.h] for t in ann.teats}))
`, annPath]).toString();
    const loaded = JSON.parse(printed) as Record<string, number[]>;
    for (const [x0, y0, x1, y1] of gestures.slice(0, 4)) {
      const slot = editor.draft.boxes.find(
        (b) => b.rect.x === Math.min(x0, x1) && b.rect.y === Math.min(y0, y1));
      expect(slot).toBeDefined();
      expect(loaded[slot!.slot as string]).toEqual(
        [slot!.rect.x, slot!.rect.y, slot!.rect.w, slot!.rect.h]);
    }
  }, 30000);

  it('server 400 names the violated rule and the draft survives', async () => {
    const frames = await api.listFrames();
    const frame = frames[1];
    const editor = new EditorState(new AnnotationDraft(frame.id));
    for (const [x0, y0, x1, y1] of [[10, 10, 30, 30], [50, 10, 70, 30],
                                    [50, 50, 70, 70], [10, 50, 30, 70],
                                    [0, 0, 90, 90]] as const) {
      editor.pointerDown({ x: x0, y: y0 }, 2);
      editor.pointerUp({ x: x1, y: y1 });
    }
    const doc = editor.draft.toDoc('x');
    const broken = { ...doc, teats: doc.teats.slice(0, 3) };
    let caught: ApiError | null = null;
    try {
      await api.putAnnotation(frame.id, broken as typeof doc);
    } catch (err) {
      caught = err as ApiError;
    }
    expect(caught).not.toBeNull();
    expect(caught!.status).toBe(400);
    expect(caught!.code).toBe('missing-teat');
    // draft unaffected by the failed save
    expect(editor.draft.boxes).toHaveLength(5);
    expect(await api.getAnnotation(frame.id)).toBeNull();
  }, 30000);

  it('serves the editor page at the root', async () => {
    const resp = await fetch(`${api.base}/`);
    expect(resp.status).toBe(200);
    const html = await resp.text();
    expect(html).toContain('udderid annotator');
  });
});
