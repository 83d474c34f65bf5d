// Figure-generation acceptance: the dynamic floors render as 27 bars
// whose encoded heights equal the published row, and the other tools run
// cleanly on golden CSVs produced by the simulator's CLI.

import * as fs from 'fs';
import * as os from 'os';
import * as path from 'path';
import { describe, expect, it } from 'vitest';

import { decodePng } from '../src/png.js';
import { plotFloors, plotTrajectories } from '../src/figures.js';
import { summarize } from '../src/summarize.js';

const GOLDEN = path.join(__dirname, 'golden');

const DYNAMIC_ROW = [0.9, 0.9, 0.6, 0.2, 0.9, 0.8, 0.7, 0.7, 0.7, 0.5, 0.9,
                     0.7, 0.7, 0.7, 0.6, 0.1, 0.7, 0.4, 0.2, 0.7, 0.9, 0.7,
                     0.6, 0.6, 0.7, 0.7, 0.9];

describe('figure generation acceptance', () => {
  it('plot-floors encodes the 27 published dynamic heights', { timeout: 30_000 }, () => {
    const out = path.join(fs.mkdtempSync(path.join(os.tmpdir(), 'accept-')), 'floors.png');
    const model = plotFloors([path.join(GOLDEN, 'floors_dynamic.csv')], out);
    expect(model.bars).toHaveLength(27);
    const sorted = [...model.bars].sort((a, b) => a.regionId - b.regionId);
    sorted.forEach((bar, i) => {
      expect(bar.value).toBe(DYNAMIC_ROW[i]);
      expect(bar.heightPx).toBe(Math.round(DYNAMIC_ROW[i] * model.plot.height));
    });
    // The written artifact is a real raster image of the declared size.
    const decoded = decodePng(fs.readFileSync(out));
    expect(decoded.width).toBe(model.width);
    expect(decoded.height).toBe(model.height);
  });

  it('plot-trajectories and summarize run clean on golden CSVs', { timeout: 30_000 }, () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), 'accept-'));
    const model = plotTrajectories(path.join(GOLDEN, 'trajectory.csv'),
                                   path.join(dir, 'trajectories.png'));
    expect(model.panels[2].series).toHaveLength(27);
    expect(fs.statSync(path.join(dir, 'trajectories.png')).size).toBeGreaterThan(0);
    const markdown = summarize(path.join(GOLDEN, 'compare.csv'),
                               path.join(dir, 'report.md'));
    expect(markdown).toContain('Regime comparison');
  });
});
