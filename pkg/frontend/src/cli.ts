#!/usr/bin/env node
// Standalone entry points, positional paths only:
//   node dist/cli.js plot-floors <floors.csv...> <out.png>
//   node dist/cli.js plot-trajectories <trajectory.csv> <out.png>
//   node dist/cli.js summarize <compare.csv> <out.md>

import { plotFloors, plotTrajectories } from './figures.js';
import { summarize } from './summarize.js';

const USAGE = `usage:
  plot-floors <floors.csv...> <out.png>
  plot-trajectories <trajectory.csv> <out.png>
  summarize <compare.csv> <out.md>`;

export function run(argv: string[]): number {
  const [command, ...args] = argv;
  try {
    switch (command) {
      case 'plot-floors': {
        if (args.length < 2) throw new Error(USAGE);
        const out = args[args.length - 1];
        const model = plotFloors(args.slice(0, -1), out);
        console.log(`wrote ${out} (${model.bars.length} bars, ` +
                    `${model.seriesLabels.length} series)`);
        return 0;
      }
      case 'plot-trajectories': {
        if (args.length !== 2) throw new Error(USAGE);
        const model = plotTrajectories(args[0], args[1]);
        const seriesCount = model.panels.reduce((n, p) => n + p.series.length, 0);
        console.log(`wrote ${args[1]} (${model.panels.length} panels, ` +
                    `${seriesCount} series)`);
        return 0;
      }
      case 'summarize': {
        if (args.length !== 2) throw new Error(USAGE);
        summarize(args[0], args[1]);
        console.log(`wrote ${args[1]}`);
        return 0;
      }
      default:
        console.error(USAGE);
        return 2;
    }
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith('cli.js')) {
  process.exit(run(process.argv.slice(2)));
}
