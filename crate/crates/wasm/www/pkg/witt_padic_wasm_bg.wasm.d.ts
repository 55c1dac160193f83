/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const convert: (a: bigint, b: number, c: number, d: number) => [number, number];
export const root: (a: bigint, b: bigint, c: number, d: number, e: number) => [number, number];
export const wieferich: (a: bigint, b: bigint) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
