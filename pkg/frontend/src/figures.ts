// Figure construction and rendering for climneg run artifacts.
//
// Each plot is built in two stages: a data model with explicit pixel
// encodings (testable without decoding any image), then a rendering of
// that model onto a Raster written out as PNG.

import * as fs from 'fs';
import * as path from 'path';

import { Table, num, readCsv, requireColumns } from './csv.js';
import { BLACK, GRAY, PALETTE, Raster, WHITE } from './raster.js';

// ---------------------------------------------------------------------------
// Grouped bar chart of base mitigation floors, one series per input file.

export interface FloorBar {
  regionId: number;
  series: string;
  value: number;
  x: number;
  y: number;
  width: number;
  /** Bar height in pixels: round(value * plot height), axis fixed to [0, 1]. */
  heightPx: number;
}

export interface FloorsFigureModel {
  width: number;
  height: number;
  plot: { x: number; y: number; width: number; height: number };
  regionIds: number[];
  seriesLabels: string[];
  bars: FloorBar[];
}

const FLOORS_WIDTH = 960;
const FLOORS_HEIGHT = 360;
const MARGIN = { left: 48, right: 16, top: 28, bottom: 40 };

export function buildFloorsModel(tables: { label: string; table: Table }[]): FloorsFigureModel {
  if (tables.length === 0) {
    throw new Error('plot-floors needs at least one floors.csv input');
  }
  const regionSet = new Set<number>();
  const valueBySeries = new Map<string, Map<number, number>>();
  for (const { label, table } of tables) {
    requireColumns(table, ['regionId', 'baseFloor']);
    const values = new Map<number, number>();
    for (const row of table.rows) {
      const rid = num(row, 'regionId', table.path);
      const floor = num(row, 'baseFloor', table.path);
      values.set(rid, floor);
      regionSet.add(rid);
    }
    valueBySeries.set(label, values);
  }
  const regionIds = [...regionSet].sort((a, b) => a - b);
  const seriesLabels = tables.map((t) => t.label);
  const plot = {
    x: MARGIN.left,
    y: MARGIN.top,
    width: FLOORS_WIDTH - MARGIN.left - MARGIN.right,
    height: FLOORS_HEIGHT - MARGIN.top - MARGIN.bottom,
  };
  const slot = plot.width / Math.max(regionIds.length, 1);
  const barWidth = Math.max(1, Math.floor((slot * 0.8) / seriesLabels.length));
  const bars: FloorBar[] = [];
  regionIds.forEach((rid, i) => {
    seriesLabels.forEach((label, k) => {
      const value = valueBySeries.get(label)?.get(rid);
      if (value === undefined) return;
      const heightPx = Math.round(value * plot.height);
      const groupLeft = plot.x + i * slot + slot * 0.1;
      bars.push({
        regionId: rid,
        series: label,
        value,
        x: Math.round(groupLeft + k * barWidth),
        y: plot.y + plot.height - heightPx,
        width: barWidth,
        heightPx,
      });
    });
  });
  return { width: FLOORS_WIDTH, height: FLOORS_HEIGHT, plot, regionIds, seriesLabels, bars };
}

export function renderFloorsModel(model: FloorsFigureModel): Raster {
  const raster = new Raster(model.width, model.height, WHITE);
  const { plot } = model;
  // Gridlines and y labels at 0, 0.2 .. 1.0.
  for (let tick = 0; tick <= 5; tick++) {
    const v = tick / 5;
    const y = plot.y + plot.height - Math.round(v * plot.height);
    raster.line(plot.x, y, plot.x + plot.width, y, GRAY);
    raster.text(8, y - 3, v.toFixed(1), BLACK);
  }
  raster.text(plot.x, 8, 'BASE MITIGATION FLOOR BY REGION', BLACK);
  model.seriesLabels.forEach((label, k) => {
    const color = PALETTE[k % PALETTE.length];
    const lx = plot.x + plot.width - 150;
    raster.fillRect(lx, 8 + 10 * k, 8, 8, color);
    raster.text(lx + 12, 8 + 10 * k, label.slice(0, 20), BLACK);
  });
  for (const bar of model.bars) {
    const k = model.seriesLabels.indexOf(bar.series);
    raster.fillRect(bar.x, bar.y, bar.width, bar.heightPx, PALETTE[k % PALETTE.length]);
  }
  // x labels: region ids, thinned to fit.
  const step = Math.ceil(model.regionIds.length / 30);
  model.regionIds.forEach((rid, i) => {
    if (i % step !== 0) return;
    const slot = plot.width / model.regionIds.length;
    const cx = plot.x + i * slot + slot / 2;
    raster.text(cx - Raster.textWidth(String(rid)) / 2,
                plot.y + plot.height + 6, String(rid), BLACK);
  });
  raster.line(plot.x, plot.y + plot.height, plot.x + plot.width,
              plot.y + plot.height, BLACK);
  raster.line(plot.x, plot.y, plot.x, plot.y + plot.height, BLACK);
  return raster;
}

export function plotFloors(inputPaths: string[], outPath: string): FloorsFigureModel {
  const tables = inputPaths.map((p) => ({
    label: path.basename(path.dirname(p)) || path.basename(p, '.csv'),
    table: readCsv(p),
  }));
  // Distinguish identically-named inputs (e.g. two floors.csv files).
  const seen = new Map<string, number>();
  for (const entry of tables) {
    const count = seen.get(entry.label) ?? 0;
    seen.set(entry.label, count + 1);
    if (count > 0) entry.label = `${entry.label}-${count + 1}`;
  }
  const model = buildFloorsModel(tables);
  fs.writeFileSync(outPath, renderFloorsModel(model).toPng());
  return model;
}

// ---------------------------------------------------------------------------
// Multi-panel time series: atmospheric temperature, global emissions,
// per-region utility.

export interface SeriesModel {
  label: string;
  points: [number, number][];
}

export interface PanelModel {
  title: string;
  series: SeriesModel[];
}

export interface TrajectoriesFigureModel {
  width: number;
  height: number;
  panels: PanelModel[];
}

const TRAJ_WIDTH = 960;
const PANEL_HEIGHT = 220;

export function buildTrajectoriesModel(table: Table): TrajectoriesFigureModel {
  requireColumns(table, ['t', 'regionId', 'E', 'U', 'tAT']);
  const rows = table.rows
    .map((row) => ({
      t: num(row, 't', table.path),
      regionId: num(row, 'regionId', table.path),
      E: num(row, 'E', table.path),
      U: num(row, 'U', table.path),
      tAT: num(row, 'tAT', table.path),
    }))
    .sort((a, b) => a.t - b.t || a.regionId - b.regionId);

  const tempByStep = new Map<number, number>();
  const emissionsByStep = new Map<number, number>();
  const utilityByRegion = new Map<number, [number, number][]>();
  for (const row of rows) {
    tempByStep.set(row.t, row.tAT);
    emissionsByStep.set(row.t, (emissionsByStep.get(row.t) ?? 0) + row.E);
    if (!utilityByRegion.has(row.regionId)) utilityByRegion.set(row.regionId, []);
    utilityByRegion.get(row.regionId)!.push([row.t, row.U]);
  }
  const steps = [...tempByStep.keys()].sort((a, b) => a - b);
  const panels: PanelModel[] = [
    {
      title: 'ATMOSPHERIC TEMPERATURE ANOMALY',
      series: [{ label: 'TAT', points: steps.map((t) => [t, tempByStep.get(t)!]) }],
    },
    {
      title: 'GLOBAL EMISSIONS PER STEP',
      series: [{ label: 'E', points: steps.map((t) => [t, emissionsByStep.get(t)!]) }],
    },
    {
      title: 'PER-REGION UTILITY',
      series: [...utilityByRegion.keys()]
        .sort((a, b) => a - b)
        .map((rid) => ({ label: `R${rid}`, points: utilityByRegion.get(rid)! })),
    },
  ];
  return { width: TRAJ_WIDTH, height: PANEL_HEIGHT * panels.length, panels };
}

function renderPanel(raster: Raster, panel: PanelModel, top: number): void {
  const plot = {
    x: MARGIN.left,
    y: top + MARGIN.top,
    width: TRAJ_WIDTH - MARGIN.left - MARGIN.right,
    height: PANEL_HEIGHT - MARGIN.top - 24,
  };
  raster.text(plot.x, top + 8, panel.title, BLACK);
  raster.line(plot.x, plot.y + plot.height, plot.x + plot.width,
              plot.y + plot.height, BLACK);
  raster.line(plot.x, plot.y, plot.x, plot.y + plot.height, BLACK);
  const points = panel.series.flatMap((s) => s.points);
  if (points.length === 0) {
    raster.text(plot.x + 8, plot.y + plot.height / 2, 'NO DATA', GRAY);
    return;
  }
  const ts = points.map(([t]) => t);
  const vs = points.map(([, v]) => v);
  const tMin = Math.min(...ts);
  const tMax = Math.max(...ts);
  let vMin = Math.min(...vs);
  let vMax = Math.max(...vs);
  if (vMin === vMax) {
    vMin -= 1;
    vMax += 1;
  }
  const sx = (t: number) =>
    plot.x + (tMax === tMin ? plot.width / 2 : ((t - tMin) / (tMax - tMin)) * plot.width);
  const sy = (v: number) => plot.y + plot.height - ((v - vMin) / (vMax - vMin)) * plot.height;
  panel.series.forEach((series, k) => {
    const color = PALETTE[k % PALETTE.length];
    for (let i = 1; i < series.points.length; i++) {
      const [t0, v0] = series.points[i - 1];
      const [t1, v1] = series.points[i];
      raster.line(sx(t0), sy(v0), sx(t1), sy(v1), color);
    }
    if (series.points.length === 1) {
      const [t0, v0] = series.points[0];
      raster.fillRect(sx(t0) - 1, sy(v0) - 1, 3, 3, color);
    }
  });
  raster.text(8, plot.y - 3, vMax.toPrecision(3), BLACK);
  raster.text(8, plot.y + plot.height - 3, vMin.toPrecision(3), BLACK);
  raster.text(plot.x - 2, plot.y + plot.height + 8, String(tMin), BLACK);
  const endLabel = String(tMax);
  raster.text(plot.x + plot.width - Raster.textWidth(endLabel),
              plot.y + plot.height + 8, endLabel, BLACK);
}

export function renderTrajectoriesModel(model: TrajectoriesFigureModel): Raster {
  const raster = new Raster(model.width, model.height, WHITE);
  model.panels.forEach((panel, i) => renderPanel(raster, panel, i * PANEL_HEIGHT));
  return raster;
}

export function plotTrajectories(inputPath: string, outPath: string): TrajectoriesFigureModel {
  const model = buildTrajectoriesModel(readCsv(inputPath));
  fs.writeFileSync(outPath, renderTrajectoriesModel(model).toPng());
  return model;
}
