import { interpolateSpectral } from "d3";

/**
 * Color for a community index out of `count`, from the spectral diverging
 * scheme. Equal indices always map to equal colors, so the panel and the
 * canvas stay in sync by construction.
 */
export function communityColor(index: number, count: number): string {
  if (count <= 1) return interpolateSpectral(0.5);
  return interpolateSpectral(index / (count - 1));
}

/** Per-node color lookup from a graph payload's membership array. */
export function colorByNodeId(
  nodeIds: number[],
  membership: number[],
): Map<number, string> {
  const count = membership.length ? Math.max(...membership) + 1 : 0;
  const colors = new Map<number, string>();
  nodeIds.forEach((id, position) => {
    const community = membership[position];
    if (community !== undefined) {
      colors.set(id, communityColor(community, count));
    }
  });
  return colors;
}
