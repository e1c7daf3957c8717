/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_evolutivecurves_free: (a: number, b: number) => void;
export const __wbg_stationarycurves_free: (a: number, b: number) => void;
export const evolutive: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const evolutivecurves_galerkin: (a: number) => [number, number];
export const evolutivecurves_galerkin_overshoot: (a: number) => number;
export const evolutivecurves_spectral: (a: number) => [number, number];
export const evolutivecurves_spectral_overshoot: (a: number) => number;
export const evolutivecurves_steps: (a: number) => number;
export const evolutivecurves_x: (a: number) => [number, number];
export const stationary: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const stationarycurves_exact: (a: number) => [number, number];
export const stationarycurves_galerkin: (a: number) => [number, number];
export const stationarycurves_galerkin_error: (a: number) => number;
export const stationarycurves_spectral: (a: number) => [number, number];
export const stationarycurves_spectral_error: (a: number) => number;
export const stationarycurves_x: (a: number) => [number, number];
export const tauErrors: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
