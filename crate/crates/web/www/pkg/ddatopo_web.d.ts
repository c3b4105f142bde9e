/* tslint:disable */
/* eslint-disable */

/**
 * Greedy picks on the sensor graph with the connectivity after each pick.
 */
export function greedy_design(n: number, radius: number, seed: bigint, budget: number): string;

/**
 * Random geometric graph as JSON `{n, positions, edges, connectivity}`.
 */
export function sensor_graph(n: number, radius: number, seed: bigint): string;

/**
 * Regret of DDA with the greedy edges added every `delta` steps against
 * the static base graph.
 */
export function simulate(n: number, radius: number, seed: bigint, budget: number, delta: number, horizon: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly greedy_design: (a: number, b: number, c: bigint, d: number) => [number, number, number, number];
    readonly sensor_graph: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly simulate: (a: number, b: number, c: bigint, d: number, e: number, f: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
