import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { Taxonomy } from "../src/api";
import { LatestWins, WeightPanel, nodesForLevel, shortLabel } from "../src/state";

const taxonomy = JSON.parse(
  readFileSync(join(process.cwd(), "tests", "fixtures", "taxonomy.json"), "utf-8"),
) as Taxonomy;

describe("nodesForLevel", () => {
  it("lists only normalized metrics at metric level", () => {
    const nodes = nodesForLevel(taxonomy, "metric");
    expect(nodes).toHaveLength(15); // 16 builtins minus the count-kind one
    expect(nodes.every((n) => n.iri.includes("dqm#"))).toBe(true);
  });

  it("lists dimensions and categories at their levels", () => {
    expect(nodesForLevel(taxonomy, "dimension")).toHaveLength(10);
    expect(nodesForLevel(taxonomy, "category")).toHaveLength(4);
  });
});

describe("WeightPanel", () => {
  it("clamps slider values into [0,1]", () => {
    const panel = new WeightPanel();
    panel.setWeight("urn:a", 1.7);
    panel.setWeight("urn:b", -0.2);
    expect(panel.weightOf("urn:a")).toBe(1);
    expect(panel.weightOf("urn:b")).toBe(0);
  });

  it("reports nonzero weights only", () => {
    const panel = new WeightPanel();
    expect(panel.hasNonZeroWeight()).toBe(false);
    panel.setWeight("urn:a", 0);
    expect(panel.hasNonZeroWeight()).toBe(false);
    panel.setWeight("urn:b", 0.4);
    expect(panel.hasNonZeroWeight()).toBe(true);
    expect(panel.weights()).toEqual({ "urn:b": 0.4 });
  });

  it("level switch resets every slider and the dirty flag", () => {
    const panel = new WeightPanel();
    panel.setWeight("urn:a", 0.9);
    expect(panel.dirty).toBe(true);
    panel.setLevel("dimension");
    expect(panel.level).toBe("dimension");
    expect(panel.weightOf("urn:a")).toBe(0);
    expect(panel.hasNonZeroWeight()).toBe(false);
    expect(panel.dirty).toBe(false);
  });

  it("setting the same level keeps weights", () => {
    const panel = new WeightPanel();
    panel.setWeight("urn:a", 0.9);
    panel.setLevel("metric");
    expect(panel.weightOf("urn:a")).toBe(0.9);
  });
});

describe("LatestWins", () => {
  it("marks superseded tokens stale", () => {
    const gate = new LatestWins();
    const first = gate.begin();
    const second = gate.begin();
    expect(gate.isCurrent(first)).toBe(false);
    expect(gate.isCurrent(second)).toBe(true);
  });
});

describe("shortLabel", () => {
  it("takes the fragment or last path segment", () => {
    expect(shortLabel("http://purl.org/eis/vocab/dqm#ShortUris")).toBe("ShortUris");
    expect(shortLabel("http://x.example/path/leaf")).toBe("leaf");
    expect(shortLabel("plain")).toBe("plain");
  });
});
