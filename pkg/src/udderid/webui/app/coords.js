/** Screen ↔ image coordinate mapping under zoom and pan.
 *
 * Boxes are stored in image pixels, never screen pixels: pointer events go
 * through screenToImage exactly once at creation/edit time, and zooming or
 * panning afterwards only changes how stored coordinates are rendered.
 */
export class ViewTransform {
    constructor() {
        this.scale = 1;
        this.offsetX = 0;
        this.offsetY = 0;
    }
    imageToScreen(p) {
        return { x: p.x * this.scale + this.offsetX, y: p.y * this.scale + this.offsetY };
    }
    screenToImage(p) {
        return { x: (p.x - this.offsetX) / this.scale, y: (p.y - this.offsetY) / this.scale };
    }
    /** Zoom by a factor keeping the given screen point fixed. */
    zoomAt(screen, factor, min = 0.1, max = 32) {
        const next = Math.min(max, Math.max(min, this.scale * factor));
        const ratio = next / this.scale;
        this.offsetX = screen.x - (screen.x - this.offsetX) * ratio;
        this.offsetY = screen.y - (screen.y - this.offsetY) * ratio;
        this.scale = next;
    }
    panBy(dx, dy) {
        this.offsetX += dx;
        this.offsetY += dy;
    }
    /** Fit an image of the given size into a viewport, centered. */
    fit(imageW, imageH, viewW, viewH) {
        this.scale = Math.min(viewW / imageW, viewH / imageH);
        this.offsetX = (viewW - imageW * this.scale) / 2;
        this.offsetY = (viewH - imageH * this.scale) / 2;
    }
}
/** Normalized rect from two corner points (any drag direction). */
export function rectFromCorners(a, b) {
    return {
        x: Math.min(a.x, b.x),
        y: Math.min(a.y, b.y),
        w: Math.abs(a.x - b.x),
        h: Math.abs(a.y - b.y),
    };
}
export function rectContains(r, p) {
    return p.x >= r.x && p.x <= r.x + r.w && p.y >= r.y && p.y <= r.y + r.h;
}
export const HANDLES = ['nw', 'ne', 'sw', 'se'];
export function handlePoint(r, handle) {
    return {
        x: handle === 'nw' || handle === 'sw' ? r.x : r.x + r.w,
        y: handle === 'nw' || handle === 'ne' ? r.y : r.y + r.h,
    };
}
/** Hit-test a handle within `radius` image pixels of the point. */
export function hitHandle(r, p, radius) {
    for (const handle of HANDLES) {
        const hp = handlePoint(r, handle);
        if (Math.abs(hp.x - p.x) <= radius && Math.abs(hp.y - p.y) <= radius) {
            return handle;
        }
    }
    return null;
}
/** New rect with the given handle dragged to `p` (opposite corner fixed). */
export function resizeRect(r, handle, p) {
    const fixed = handlePoint(r, opposite(handle));
    return rectFromCorners(fixed, p);
}
function opposite(handle) {
    switch (handle) {
        case 'nw': return 'se';
        case 'ne': return 'sw';
        case 'sw': return 'ne';
        case 'se': return 'nw';
    }
}
