/** App wiring: frame list with annotation badges, the canvas editor, save
 * flow, error banners, and keyboard shortcuts (1-4 teats, U udder, S save,
 * arrows prev/next frame, Delete remove box, Escape deselect). */

import { AnnotationApi, ApiError } from './api.js';
import { ViewTransform } from './coords.js';
import { AnnotationDraft } from './draft.js';
import { EditorState } from './editor.js';
import { drawScene } from './render.js';
import type { BoxSlot, FrameInfo } from './types.js';
import { SLOT_ORDER } from './types.js';

const HANDLE_SCREEN_PX = 6;

class App {
  private readonly api = new AnnotationApi('');
  private frames: FrameInfo[] = [];
  private currentIndex = -1;
  private editor: EditorState | null = null;
  private view = new ViewTransform();
  private image: HTMLImageElement | null = null;
  private imageRef = '';
  private panning: { lastX: number; lastY: number } | null = null;

  private readonly canvas = document.getElementById('editor') as HTMLCanvasElement;
  private readonly ctx = this.canvas.getContext('2d')!;
  private readonly frameList = document.getElementById('frame-list')!;
  private readonly banner = document.getElementById('banner')!;
  private readonly status = document.getElementById('status')!;
  private readonly saveButton = document.getElementById('save') as HTMLButtonElement;

  async start(): Promise<void> {
    this.bindEvents();
    await this.refreshFrames();
    if (this.frames.length > 0) {
      await this.openFrame(0);
    }
    this.resizeCanvas();
    this.redraw();
  }

  private async refreshFrames(): Promise<void> {
    try {
      this.frames = await this.api.listFrames();
      this.hideBanner();
    } catch (err) {
      this.frames = [];
      this.showBanner(`cannot reach the annotation server: ${messageOf(err)}`, () =>
        this.refreshFrames(),
      );
    }
    this.renderFrameList();
  }

  private renderFrameList(): void {
    this.frameList.textContent = '';
    if (this.frames.length === 0) {
      const empty = document.createElement('li');
      empty.className = 'empty';
      empty.textContent = 'no frames in this manifest';
      this.frameList.appendChild(empty);
      return;
    }
    this.frames.forEach((frame, i) => {
      const item = document.createElement('li');
      item.className = i === this.currentIndex ? 'active' : '';
      const badge = frame.annotated ? '<span class="badge done">done</span>'
                                    : '<span class="badge todo">todo</span>';
      item.innerHTML = `<span>${frame.cow_id} · day ${frame.day}</span>${badge}`;
      item.addEventListener('click', () => void this.openFrame(i));
      this.frameList.appendChild(item);
    });
  }

  private async openFrame(index: number): Promise<void> {
    if (index < 0 || index >= this.frames.length) return;
    if (this.editor?.draft.dirty &&
        !window.confirm('Discard unsaved changes on this frame?')) {
      return;
    }
    this.currentIndex = index;
    const frame = this.frames[index];
    this.imageRef = `${frame.cow_id}_c${frame.collection}_d${frame.day}`;

    try {
      const doc = await this.api.getAnnotation(frame.id);
      const draft = doc === null
        ? new AnnotationDraft(frame.id)
        : AnnotationDraft.fromDoc(frame.id, doc);
      if (doc !== null) this.imageRef = doc.image;
      this.editor = new EditorState(draft);
      this.hideBanner();
    } catch (err) {
      this.showBanner(`failed to load annotation: ${messageOf(err)}`, () =>
        this.openFrame(index),
      );
      return;
    }

    this.image = null;
    if (frame.has_image) {
      const img = new Image();
      img.onload = () => {
        this.image = img;
        this.view.fit(img.naturalWidth, img.naturalHeight,
                      this.canvas.width, this.canvas.height);
        this.redraw();
      };
      img.onerror = () => {
        this.showBanner('frame image failed to load; boxes can still be edited');
        this.redraw();
      };
      img.src = this.api.imageUrl(frame.id);
    } else {
      this.view.fit(400, 400, this.canvas.width, this.canvas.height);
    }
    this.renderFrameList();
    this.redraw();
  }

  private async save(): Promise<void> {
    const editor = this.editor;
    if (editor === null || this.currentIndex < 0) return;
    if (!editor.draft.isComplete()) {
      this.showBanner('annotation incomplete: need all 4 teats and the udder box');
      return;
    }
    const frame = this.frames[this.currentIndex];
    try {
      const saved = await this.api.putAnnotation(
        frame.id, editor.draft.toDoc(this.imageRef));
      editor.draft.dirty = false;
      this.frames[this.currentIndex] = { ...frame, annotated: true };
      this.imageRef = saved.image;
      this.hideBanner();
      this.renderFrameList();
      this.redraw();
    } catch (err) {
      // 400s carry the violated rule; network failures keep the draft local
      const detail = err instanceof ApiError && err.code !== null
        ? `${err.code}: ${err.message}` : messageOf(err);
      this.showBanner(`save rejected — ${detail}`);
    }
  }

  private bindEvents(): void {
    window.addEventListener('resize', () => {
      this.resizeCanvas();
      this.redraw();
    });

    this.canvas.addEventListener('pointerdown', (ev) => {
      this.canvas.setPointerCapture(ev.pointerId);
      if (ev.button === 1 || ev.shiftKey) {
        this.panning = { lastX: ev.offsetX, lastY: ev.offsetY };
        return;
      }
      if (this.editor === null) return;
      const p = this.view.screenToImage({ x: ev.offsetX, y: ev.offsetY });
      this.editor.pointerDown(p, HANDLE_SCREEN_PX / this.view.scale);
      this.redraw();
    });

    this.canvas.addEventListener('pointermove', (ev) => {
      if (this.panning !== null) {
        this.view.panBy(ev.offsetX - this.panning.lastX,
                        ev.offsetY - this.panning.lastY);
        this.panning = { lastX: ev.offsetX, lastY: ev.offsetY };
        this.redraw();
        return;
      }
      if (this.editor === null || ev.buttons === 0) return;
      this.editor.pointerMove(this.view.screenToImage({ x: ev.offsetX, y: ev.offsetY }));
      this.redraw();
    });

    this.canvas.addEventListener('pointerup', (ev) => {
      if (this.panning !== null) {
        this.panning = null;
        return;
      }
      if (this.editor === null) return;
      const outcome = this.editor.pointerUp(
        this.view.screenToImage({ x: ev.offsetX, y: ev.offsetY }));
      if (outcome.kind === 'rejected-full') {
        this.showBanner('all five boxes exist; select one to adjust or delete it first');
      }
      this.redraw();
    });

    this.canvas.addEventListener('wheel', (ev) => {
      ev.preventDefault();
      const factor = ev.deltaY < 0 ? 1.2 : 1 / 1.2;
      this.view.zoomAt({ x: ev.offsetX, y: ev.offsetY }, factor);
      this.redraw();
    }, { passive: false });

    window.addEventListener('keydown', (ev) => {
      if (ev.target instanceof HTMLInputElement) return;
      const slotKeys: Record<string, BoxSlot> = {
        '1': 'LF', '2': 'RF', '3': 'RR', '4': 'LR', u: 'udder', U: 'udder',
      };
      if (ev.key in slotKeys) {
        this.editor?.assignSelected(slotKeys[ev.key]);
        this.redraw();
      } else if (ev.key === 's' || ev.key === 'S') {
        void this.save();
      } else if (ev.key === 'ArrowRight' || ev.key === 'ArrowDown') {
        void this.openFrame(this.currentIndex + 1);
      } else if (ev.key === 'ArrowLeft' || ev.key === 'ArrowUp') {
        void this.openFrame(this.currentIndex - 1);
      } else if (ev.key === 'Delete' || ev.key === 'Backspace') {
        this.editor?.deleteSelected();
        this.redraw();
      } else if (ev.key === 'Escape') {
        if (this.editor) this.editor.selected = null;
        this.redraw();
      }
    });

    this.saveButton.addEventListener('click', () => void this.save());
  }

  private resizeCanvas(): void {
    const holder = this.canvas.parentElement!;
    this.canvas.width = holder.clientWidth;
    this.canvas.height = holder.clientHeight;
  }

  private redraw(): void {
    if (this.editor === null) {
      this.ctx.setTransform(1, 0, 0, 1, 0, 0);
      this.ctx.fillStyle = '#181818';
      this.ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);
      this.updateStatus();
      return;
    }
    drawScene(this.ctx, this.view, this.image, this.editor);
    this.updateStatus();
  }

  private updateStatus(): void {
    const editor = this.editor;
    if (editor === null) {
      this.status.textContent = 'no frame loaded';
      this.saveButton.disabled = true;
      return;
    }
    const missing = SLOT_ORDER.filter((s) => !editor.draft.box(s));
    const parts = [
      editor.selected !== null ? `selected: ${editor.selected}` : 'nothing selected',
      missing.length > 0 ? `missing: ${missing.join(', ')}` : 'complete',
      editor.draft.dirty ? 'unsaved changes' : 'saved',
    ];
    this.status.textContent = parts.join('  ·  ');
    this.saveButton.disabled = !editor.draft.isComplete();
  }

  private showBanner(message: string, retry?: () => unknown): void {
    this.banner.textContent = '';
    this.banner.append(message);
    if (retry) {
      const btn = document.createElement('button');
      btn.textContent = 'retry';
      btn.addEventListener('click', () => void retry());
      this.banner.append(' ', btn);
    }
    this.banner.hidden = false;
  }

  private hideBanner(): void {
    this.banner.hidden = true;
  }
}

function messageOf(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

void new App().start();
