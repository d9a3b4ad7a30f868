/* @ts-self-types="./ddr_web.d.ts" */

/**
 * Medium and drive shared by every operation.
 */
export class Medium {
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        MediumFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_medium_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get control() {
        const ret = wasm.__wbg_get_medium_control(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get delta_control() {
        const ret = wasm.__wbg_get_medium_delta_control(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get delta_microwave() {
        const ret = wasm.__wbg_get_medium_delta_microwave(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get delta_probe() {
        const ret = wasm.__wbg_get_medium_delta_probe(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get microwave() {
        const ret = wasm.__wbg_get_medium_microwave(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get pump_rate() {
        const ret = wasm.__wbg_get_medium_pump_rate(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} pump_rate
     * @param {number} microwave
     * @param {number} control
     * @param {number} delta_probe
     */
    constructor(pump_rate, microwave, control, delta_probe) {
        const ret = wasm.medium_new(pump_rate, microwave, control, delta_probe);
        this.__wbg_ptr = ret;
        MediumFinalization.register(this, this.__wbg_ptr, this);
        return this;
    }
    /**
     * @param {number} arg0
     */
    set control(arg0) {
        wasm.__wbg_set_medium_control(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set delta_control(arg0) {
        wasm.__wbg_set_medium_delta_control(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set delta_microwave(arg0) {
        wasm.__wbg_set_medium_delta_microwave(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set delta_probe(arg0) {
        wasm.__wbg_set_medium_delta_probe(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set microwave(arg0) {
        wasm.__wbg_set_medium_microwave(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set pump_rate(arg0) {
        wasm.__wbg_set_medium_pump_rate(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Medium.prototype[Symbol.dispose] = Medium.prototype.free;

/**
 * Result of a 1D propagation through the doublet.
 */
export class Propagation {
    static __wrap(ptr) {
        const obj = Object.create(Propagation.prototype);
        obj.__wbg_ptr = ptr;
        PropagationFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        PropagationFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_propagation_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get transmission() {
        const ret = wasm.propagation_transmission(this.__wbg_ptr);
        return ret;
    }
    /**
     * Quadruples (x, input probe intensity, output probe intensity, output
     * control intensity), intensities as |field|^2 in units of gamma^2.
     * @returns {Float64Array}
     */
    get values() {
        const ret = wasm.propagation_values(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) Propagation.prototype[Symbol.dispose] = Propagation.prototype.free;

/**
 * @param {Medium} medium
 * @param {number} separation
 * @param {number} points
 * @returns {Float64Array}
 */
export function chiCut(medium, separation, points) {
    _assertClass(medium, Medium);
    const ret = wasm.chiCut(medium.__wbg_ptr, separation, points);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}

/**
 * @param {Medium} medium
 * @param {number} separation
 * @param {number} length
 * @param {number} points
 * @returns {Propagation}
 */
export function propagateCut(medium, separation, length, points) {
    _assertClass(medium, Medium);
    const ret = wasm.propagateCut(medium.__wbg_ptr, separation, length, points);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Propagation.__wrap(ret[0]);
}

/**
 * @param {Medium} medium
 * @param {number} start
 * @param {number} stop
 * @param {number} points
 * @returns {Float64Array}
 */
export function spectrum(medium, start, stop, points) {
    _assertClass(medium, Medium);
    const ret = wasm.spectrum(medium.__wbg_ptr, start, stop, points);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./ddr_web_bg.js": import0,
    };
}

const MediumFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_medium_free(ptr, 1));
const PropagationFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_propagation_free(ptr, 1));

function _assertClass(instance, klass) {
    if (!(instance instanceof klass)) {
        throw new Error(`expected instance of ${klass.name}`);
    }
}

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('ddr_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
