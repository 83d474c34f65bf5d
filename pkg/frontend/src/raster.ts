// A tiny RGBA pixel canvas with just enough drawing for chart rendering.

import { GLYPHS, GLYPH_HEIGHT, GLYPH_WIDTH } from './font.js';
import { encodePng } from './png.js';

export type Color = [number, number, number, number];

export const BLACK: Color = [0, 0, 0, 255];
export const WHITE: Color = [255, 255, 255, 255];
export const GRAY: Color = [200, 200, 200, 255];

// Qualitative palette for data series.
export const PALETTE: Color[] = [
  [31, 119, 180, 255],
  [255, 127, 14, 255],
  [44, 160, 44, 255],
  [214, 39, 40, 255],
  [148, 103, 189, 255],
  [140, 86, 75, 255],
  [227, 119, 194, 255],
  [127, 127, 127, 255],
];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Color = WHITE) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.data.set(background, i * 4);
    }
  }

  set(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    this.data.set(color, (y * this.width + x) * 4);
  }

  get(x: number, y: number): Color {
    const i = (y * this.width + x) * 4;
    return [this.data[i], this.data[i + 1], this.data[i + 2], this.data[i + 3]];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Color): void {
    const x1 = Math.max(0, Math.round(x));
    const y1 = Math.max(0, Math.round(y));
    const x2 = Math.min(this.width, Math.round(x + w));
    const y2 = Math.min(this.height, Math.round(y + h));
    for (let yy = y1; yy < y2; yy++) {
      for (let xx = x1; xx < x2; xx++) {
        this.data.set(color, (yy * this.width + xx) * 4);
      }
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Color): void {
    // Bresenham over rounded endpoints.
    let x = Math.round(x0);
    let y = Math.round(y0);
    const ex = Math.round(x1);
    const ey = Math.round(y1);
    const dx = Math.abs(ex - x);
    const dy = -Math.abs(ey - y);
    const sx = x < ex ? 1 : -1;
    const sy = y < ey ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(x, y, color);
      if (x === ex && y === ey) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  text(x: number, y: number, message: string, color: Color = BLACK): void {
    let cx = Math.round(x);
    const cy = Math.round(y);
    for (const raw of message.toUpperCase()) {
      const glyph = GLYPHS[raw] ?? GLYPHS[' '];
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if ((glyph[row] >> (GLYPH_WIDTH - 1 - col)) & 1) {
            this.set(cx + col, cy + row, color);
          }
        }
      }
      cx += GLYPH_WIDTH + 1;
    }
  }

  static textWidth(message: string): number {
    return message.length * (GLYPH_WIDTH + 1) - 1;
  }

  toPng(): Buffer {
    return encodePng(this.width, this.height, this.data);
  }
}
