/** Screen ↔ image coordinate mapping under zoom and pan.
 *
 * Boxes are stored in image pixels, never screen pixels: pointer events go
 * through screenToImage exactly once at creation/edit time, and zooming or
 * panning afterwards only changes how stored coordinates are rendered.
 */

import type { Rect } from './types.js';

export interface Point {
  x: number;
  y: number;
}

export class ViewTransform {
  scale = 1;
  offsetX = 0;
  offsetY = 0;

  imageToScreen(p: Point): Point {
    return { x: p.x * this.scale + this.offsetX, y: p.y * this.scale + this.offsetY };
  }

  screenToImage(p: Point): Point {
    return { x: (p.x - this.offsetX) / this.scale, y: (p.y - this.offsetY) / this.scale };
  }

  /** Zoom by a factor keeping the given screen point fixed. */
  zoomAt(screen: Point, factor: number, min = 0.1, max = 32): void {
    const next = Math.min(max, Math.max(min, this.scale * factor));
    const ratio = next / this.scale;
    this.offsetX = screen.x - (screen.x - this.offsetX) * ratio;
    this.offsetY = screen.y - (screen.y - this.offsetY) * ratio;
    this.scale = next;
  }

  panBy(dx: number, dy: number): void {
    this.offsetX += dx;
    this.offsetY += dy;
  }

  /** Fit an image of the given size into a viewport, centered. */
  fit(imageW: number, imageH: number, viewW: number, viewH: number): void {
    this.scale = Math.min(viewW / imageW, viewH / imageH);
    this.offsetX = (viewW - imageW * this.scale) / 2;
    this.offsetY = (viewH - imageH * this.scale) / 2;
  }
}

/** Normalized rect from two corner points (any drag direction). */
export function rectFromCorners(a: Point, b: Point): Rect {
  return {
    x: Math.min(a.x, b.x),
    y: Math.min(a.y, b.y),
    w: Math.abs(a.x - b.x),
    h: Math.abs(a.y - b.y),
  };
}

export function rectContains(r: Rect, p: Point): boolean {
  return p.x >= r.x && p.x <= r.x + r.w && p.y >= r.y && p.y <= r.y + r.h;
}

export type ResizeHandle = 'nw' | 'ne' | 'sw' | 'se';

export const HANDLES: ResizeHandle[] = ['nw', 'ne', 'sw', 'se'];

export function handlePoint(r: Rect, handle: ResizeHandle): Point {
  return {
    x: handle === 'nw' || handle === 'sw' ? r.x : r.x + r.w,
    y: handle === 'nw' || handle === 'ne' ? r.y : r.y + r.h,
  };
}

/** Hit-test a handle within `radius` image pixels of the point. */
export function hitHandle(r: Rect, p: Point, radius: number): ResizeHandle | null {
  for (const handle of HANDLES) {
    const hp = handlePoint(r, handle);
    if (Math.abs(hp.x - p.x) <= radius && Math.abs(hp.y - p.y) <= radius) {
      return handle;
    }
  }
  return null;
}

/** New rect with the given handle dragged to `p` (opposite corner fixed). */
export function resizeRect(r: Rect, handle: ResizeHandle, p: Point): Rect {
  const fixed = handlePoint(r, opposite(handle));
  return rectFromCorners(fixed, p);
}

function opposite(handle: ResizeHandle): ResizeHandle {
  switch (handle) {
    case 'nw': return 'se';
    case 'ne': return 'sw';
    case 'sw': return 'ne';
    case 'se': return 'nw';
  }
}
