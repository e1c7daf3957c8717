/* tslint:disable */
/* eslint-disable */

/**
 * Backward Euler trajectories from the box initial data, stored step by step.
 */
export class EvolutiveCurves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Galerkin nodal values for steps `0..=steps`, concatenated.
     */
    readonly galerkin: Float64Array;
    /**
     * Largest overshoot over steps `1..=steps`.
     */
    readonly galerkin_overshoot: number;
    /**
     * Spectral nodal values for steps `0..=steps`, concatenated.
     */
    readonly spectral: Float64Array;
    readonly spectral_overshoot: number;
    readonly steps: number;
    readonly x: Float64Array;
}

/**
 * Nodal profiles of the stationary problem `gamma u + c u' - mu u'' = 0`, `u(0)=0`, `u(1)=1`.
 */
export class StationaryCurves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly exact: Float64Array;
    /**
     * Max nodal error of the Galerkin solution.
     */
    readonly galerkin_error: number;
    readonly galerkin: Float64Array;
    /**
     * Max nodal error of the spectral solution.
     */
    readonly spectral_error: number;
    readonly spectral: Float64Array;
    readonly x: Float64Array;
}

/**
 * Runs `steps` backward Euler steps from the box `[0.2, 0.7]`.
 */
export function evolutive(c: number, mu: number, n_elements: number, k: number, steps: number, modes: number): EvolutiveCurves;

/**
 * Solves the stationary problem with Galerkin and with `modes` spectral modes.
 */
export function stationary(gamma: number, c: number, mu: number, n_elements: number, modes: number): StationaryCurves;

/**
 * Truncation error of the stabilization coefficient at element Peclet number `c h / (2 mu)`.
 */
export function tauErrors(k: number, peclet: number, mu: number, h: number, max_modes: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_evolutivecurves_free: (a: number, b: number) => void;
    readonly __wbg_stationarycurves_free: (a: number, b: number) => void;
    readonly evolutive: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly evolutivecurves_galerkin: (a: number) => [number, number];
    readonly evolutivecurves_galerkin_overshoot: (a: number) => number;
    readonly evolutivecurves_spectral: (a: number) => [number, number];
    readonly evolutivecurves_spectral_overshoot: (a: number) => number;
    readonly evolutivecurves_steps: (a: number) => number;
    readonly evolutivecurves_x: (a: number) => [number, number];
    readonly stationary: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly stationarycurves_exact: (a: number) => [number, number];
    readonly stationarycurves_galerkin: (a: number) => [number, number];
    readonly stationarycurves_galerkin_error: (a: number) => number;
    readonly stationarycurves_spectral: (a: number) => [number, number];
    readonly stationarycurves_spectral_error: (a: number) => number;
    readonly stationarycurves_x: (a: number) => [number, number];
    readonly tauErrors: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
