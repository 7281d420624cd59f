// Weight panel state: slider values per node of the active level.
// Switching level discards all slider values (no cross-level leakage).

import type { Level, Taxonomy } from "./api";

export interface WeightNode {
  iri: string;
  label: string;
}

export function nodesForLevel(taxonomy: Taxonomy, level: Level): WeightNode[] {
  const nodes: WeightNode[] = [];
  for (const category of taxonomy.categories) {
    if (level === "category") {
      nodes.push({ iri: category.iri, label: shortLabel(category.iri) });
      continue;
    }
    for (const dimension of category.dimensions) {
      if (level === "dimension") {
        nodes.push({ iri: dimension.iri, label: shortLabel(dimension.iri) });
        continue;
      }
      for (const metric of dimension.metrics) {
        if (metric.normalized) {
          nodes.push({ iri: metric.iri, label: metric.label });
        }
      }
    }
  }
  return nodes;
}

export function shortLabel(iri: string): string {
  const cut = Math.max(iri.lastIndexOf("#"), iri.lastIndexOf("/"));
  return cut >= 0 ? iri.slice(cut + 1) : iri;
}

export class WeightPanel {
  private values = new Map<string, number>();
  private _level: Level = "metric";
  dirty = false;

  get level(): Level {
    return this._level;
  }

  setLevel(level: Level): void {
    if (level === this._level) return;
    this._level = level;
    this.values.clear(); // level switch resets every slider to 0
    this.dirty = false;
  }

  setWeight(iri: string, value: number): void {
    const clamped = Math.min(1, Math.max(0, value));
    this.values.set(iri, clamped);
    this.dirty = true;
  }

  weightOf(iri: string): number {
    return this.values.get(iri) ?? 0;
  }

  hasNonZeroWeight(): boolean {
    for (const value of this.values.values()) {
      if (value > 0) return true;
    }
    return false;
  }

  weights(): Record<string, number> {
    const out: Record<string, number> = {};
    for (const [iri, value] of this.values) {
      if (value > 0) out[iri] = value;
    }
    return out;
  }
}

// At most one rank request is live: responses for superseded requests are
// dropped so a slow early reply can never overwrite a newer ranking.
export class LatestWins {
  private sequence = 0;

  begin(): number {
    return ++this.sequence;
  }

  isCurrent(token: number): boolean {
    return token === this.sequence;
  }
}
