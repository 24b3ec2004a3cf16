// Trailing-edge debounce: one call fires per burst of edits.
export function debounce(fn, waitMs = 300) {
    let timer;
    const wrapped = (...args) => {
        if (timer !== undefined)
            clearTimeout(timer);
        timer = setTimeout(() => {
            timer = undefined;
            fn(...args);
        }, waitMs);
    };
    wrapped.cancel = () => {
        if (timer !== undefined)
            clearTimeout(timer);
        timer = undefined;
    };
    return wrapped;
}
