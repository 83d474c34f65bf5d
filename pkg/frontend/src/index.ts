export { readCsv, requireColumns, num } from './csv.js';
export type { Table } from './csv.js';
export {
  buildFloorsModel, renderFloorsModel, plotFloors,
  buildTrajectoriesModel, renderTrajectoriesModel, plotTrajectories,
} from './figures.js';
export type {
  FloorBar, FloorsFigureModel, PanelModel, SeriesModel,
  TrajectoriesFigureModel,
} from './figures.js';
export { buildSummary, summarize } from './summarize.js';
export { encodePng, decodePng } from './png.js';
export { Raster, PALETTE, BLACK, WHITE, GRAY } from './raster.js';
export { run } from './cli.js';
