// Payload shapes of the read-only graph API.

export interface CategoryDto {
  id: number;
  name: string;
  supercategory: string;
}

export interface EdgeDto {
  source: number;
  target: number;
  weight: number;
  intersection: number;
  union: number;
}

export interface CommunitiesDto {
  threshold: number;
  modularity: number;
  /** One community index per node, in node order (ascending id). */
  membership: number[];
}

export interface GraphPayload {
  meta: { images: number; annotations: number; include_crowd: boolean };
  threshold: number;
  nodes: CategoryDto[];
  edges: EdgeDto[];
  communities: CommunitiesDto;
}

export interface EgoMemberDto {
  id: number;
  energy: number;
  depth: number;
  parent: number | null;
}

export interface EgoPayload {
  focus: number;
  threshold: number;
  params: {
    initial_energy: number;
    decay: number;
    fire_threshold: number;
    max_depth: number | null;
  };
  members: EgoMemberDto[];
}

export interface StatsDto {
  nodes: number;
  edges: number;
  average_degree: number;
  weight_min: number;
  weight_max: number;
  weight_mean: number;
}
