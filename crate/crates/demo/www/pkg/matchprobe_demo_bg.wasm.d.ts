/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const converge_view: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number) => [number, number];
export const estimate_view: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
export const improve_view: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const reroll_seed: (a: number, b: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
