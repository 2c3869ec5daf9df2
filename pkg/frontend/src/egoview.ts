import * as d3 from "d3";

import type { EgoMemberDto, EgoPayload } from "./types";
import { VIEW_HEIGHT, VIEW_WIDTH } from "./social";

const RING_STEP = 110;

export interface EgoRenderResult {
  memberCount: number;
  ringCount: number;
}

/**
 * Radial tidy tree around the focus: members sit on one circle per depth
 * (ring index = hop distance), linked to their parent, energy shown on
 * hover. Node colors can reuse the community map so panel and canvas
 * agree across views.
 */
export function renderEgo(
  svgElement: SVGSVGElement,
  payload: EgoPayload,
  options: {
    colors?: Map<number, string>;
    names?: Map<number, string>;
    onNodeClick?: (id: number) => void;
  } = {},
): EgoRenderResult {
  const root = d3
    .stratify<EgoMemberDto>()
    .id((d) => String(d.id))
    .parentId((d) => (d.parent === null ? null : String(d.parent)))(
    payload.members,
  );

  const maxDepth = Math.max(...payload.members.map((m) => m.depth));
  const layout = d3
    .tree<EgoMemberDto>()
    .size([2 * Math.PI, Math.max(1, maxDepth) * RING_STEP])
    .separation((a, b) => (a.parent === b.parent ? 1 : 2) / (a.depth || 1));
  const laidOut = layout(root);
  // pin every node to its exact depth ring
  laidOut.each((node) => {
    node.y = node.data.depth * RING_STEP;
  });

  const centerX = VIEW_WIDTH / 2;
  const centerY = VIEW_HEIGHT / 2;
  const toXY = (node: d3.HierarchyPointNode<EgoMemberDto>): [number, number] => [
    centerX + node.y * Math.cos(node.x - Math.PI / 2),
    centerY + node.y * Math.sin(node.x - Math.PI / 2),
  ];

  const svg = d3.select(svgElement);
  svg.selectAll("*").remove();
  svg.attr("viewBox", `0 0 ${VIEW_WIDTH} ${VIEW_HEIGHT}`);

  svg
    .append("g")
    .attr("class", "rings")
    .selectAll("circle")
    .data(d3.range(1, maxDepth + 1))
    .join("circle")
    .attr("class", "ring")
    .attr("cx", centerX)
    .attr("cy", centerY)
    .attr("r", (depth) => depth * RING_STEP)
    .attr("fill", "none")
    .attr("stroke", "#3c3c4a")
    .attr("stroke-dasharray", "3 5");

  svg
    .append("g")
    .attr("class", "links")
    .selectAll("line")
    .data(laidOut.links())
    .join("line")
    .attr("class", "link")
    .attr("stroke", "#7a7a8c")
    .attr("stroke-opacity", 0.6)
    .attr("x1", (d) => toXY(d.source)[0])
    .attr("y1", (d) => toXY(d.source)[1])
    .attr("x2", (d) => toXY(d.target)[0])
    .attr("y2", (d) => toXY(d.target)[1]);

  const nodeGroup = svg
    .append("g")
    .attr("class", "nodes")
    .selectAll("g")
    .data(laidOut.descendants())
    .join("g")
    .attr("class", "node")
    .attr("data-id", (d) => d.data.id)
    .attr("data-depth", (d) => d.data.depth)
    .attr("transform", (d) => {
      const [x, y] = toXY(d);
      return `translate(${x},${y})`;
    })
    .style("cursor", "pointer")
    .on("click", (_event, d) => options.onNodeClick?.(d.data.id));

  nodeGroup
    .append("circle")
    .attr("r", (d) => (d.data.depth === 0 ? 13 : 9))
    .attr("fill", (d) => options.colors?.get(d.data.id) ?? "#999")
    .attr("stroke", "#1b1b22")
    .attr("stroke-width", (d) => (d.data.depth === 0 ? 2.5 : 1.2));

  // hover tooltip carries the spreading-activation energy
  nodeGroup
    .append("title")
    .text((d) => `energy ${d.data.energy.toFixed(4)} (depth ${d.data.depth})`);

  nodeGroup
    .append("text")
    .attr("class", "node-label")
    .attr("dy", (d) => (d.data.depth === 0 ? -17 : -13))
    .attr("text-anchor", "middle")
    .text((d) => options.names?.get(d.data.id) ?? String(d.data.id));

  return { memberCount: payload.members.length, ringCount: maxDepth };
}
