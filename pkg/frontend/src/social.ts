import * as d3 from "d3";

import { colorByNodeId } from "./color";
import type { EdgeDto, GraphPayload } from "./types";

export const VIEW_WIDTH = 960;
export const VIEW_HEIGHT = 640;
export const DENSITY_CAP_LIMIT = 800;

interface SimNode extends d3.SimulationNodeDatum {
  id: number;
  name: string;
}

interface SimLink extends d3.SimulationLinkDatum<SimNode> {
  weight: number;
}

export interface SocialRenderResult {
  nodeCount: number;
  edgeCount: number;
  capped: boolean;
}

/**
 * Whole-graph view: one glyph per category (isolated ones float free),
 * one line per retained edge, community coloring. The force layout is
 * run to rest synchronously so the produced SVG is a pure function of the
 * payload. Rendered edge count equals the payload's unless the explicit
 * density cap is enabled.
 */
export function renderSocial(
  svgElement: SVGSVGElement,
  payload: GraphPayload,
  options: {
    densityCap?: boolean;
    onNodeClick?: (id: number) => void;
  } = {},
): SocialRenderResult {
  let edges: EdgeDto[] = payload.edges;
  let capped = false;
  if (options.densityCap && edges.length > DENSITY_CAP_LIMIT) {
    edges = [...edges]
      .sort((a, b) => b.weight - a.weight)
      .slice(0, DENSITY_CAP_LIMIT);
    capped = true;
  }

  const nodes: SimNode[] = payload.nodes.map((n) => ({ id: n.id, name: n.name }));
  const links: SimLink[] = edges.map((e) => ({
    source: e.source,
    target: e.target,
    weight: e.weight,
  }));

  const simulation = d3
    .forceSimulation(nodes)
    .force("charge", d3.forceManyBody().strength(-160))
    .force(
      "link",
      d3
        .forceLink<SimNode, SimLink>(links)
        .id((d) => d.id)
        .distance((d) => 24 + 90 * (1 - Math.min(1, d.weight * 2)))
        .strength((d) => Math.min(1, 0.2 + d.weight)),
    )
    .force("center", d3.forceCenter(VIEW_WIDTH / 2, VIEW_HEIGHT / 2))
    .force("collide", d3.forceCollide(16))
    .stop();
  simulation.tick(250);

  const colors = colorByNodeId(
    payload.nodes.map((n) => n.id),
    payload.communities.membership,
  );

  const svg = d3.select(svgElement);
  svg.selectAll("*").remove();
  svg.attr("viewBox", `0 0 ${VIEW_WIDTH} ${VIEW_HEIGHT}`);

  svg
    .append("g")
    .attr("class", "links")
    .selectAll("line")
    .data(links)
    .join("line")
    .attr("class", "link")
    .attr("stroke", "#7a7a8c")
    .attr("stroke-opacity", 0.45)
    .attr("stroke-width", (d) => 0.5 + 2.5 * d.weight)
    .attr("x1", (d) => (d.source as SimNode).x ?? 0)
    .attr("y1", (d) => (d.source as SimNode).y ?? 0)
    .attr("x2", (d) => (d.target as SimNode).x ?? 0)
    .attr("y2", (d) => (d.target as SimNode).y ?? 0);

  const nodeGroup = svg
    .append("g")
    .attr("class", "nodes")
    .selectAll("g")
    .data(nodes)
    .join("g")
    .attr("class", "node")
    .attr("data-id", (d) => d.id)
    .attr("transform", (d) => `translate(${d.x ?? 0},${d.y ?? 0})`)
    .style("cursor", "pointer")
    .on("click", (_event, d) => options.onNodeClick?.(d.id));

  nodeGroup
    .append("circle")
    .attr("r", 9)
    .attr("fill", (d) => colors.get(d.id) ?? "#999")
    .attr("stroke", "#1b1b22")
    .attr("stroke-width", 1.2);

  nodeGroup
    .append("text")
    .attr("class", "node-label")
    .attr("dy", -13)
    .attr("text-anchor", "middle")
    .text((d) => d.name);

  return { nodeCount: nodes.length, edgeCount: links.length, capped };
}
