/* tslint:disable */
/* eslint-disable */

/**
 * Runs the convergence experiment over comma-separated sizes and returns
 * the trace rows for plotting. Flat scalars keep the JS call site simple.
 */
export function converge_view(family: string, sizes_csv: string, radius: number, path_cap: number, phases: number, seed: number, use_exact: boolean, epsilon: number, delta: number): string;

/**
 * Runs the sampling estimator and reports the bracket, sample counts, and
 * probe statistics; includes the exact ratio when the graph is small enough
 * to solve outright.
 */
export function estimate_view(family: string, path_cap: number, phases: number, seed: number, epsilon: number, delta: number, sample_seed: number): string;

/**
 * Runs the phased improver on a family graph and reports everything the
 * graph view needs: layout, edges, the matching, per-vertex status, the
 * certified bracket, and (for small graphs) the exact ratio.
 */
export function improve_view(family: string, path_cap: number, phases: number, seed: number): string;

/**
 * Fresh seeds for the page's "reroll" buttons, derived from the pinned hash.
 */
export function reroll_seed(current: number, nonce: number): number;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly converge_view: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number) => [number, number];
    readonly estimate_view: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
    readonly improve_view: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly reroll_seed: (a: number, b: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
