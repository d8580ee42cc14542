/**
 * Rate limiter for the weight slider: at most one emission per window,
 * always carrying the latest value pushed during that window.
 *
 * This is not a plain trailing debounce. A continuous drag keeps resetting
 * a trailing timer and would stay silent until the hand stops; here the
 * window opens on the first push and fires at its end no matter how many
 * pushes follow, so a long drag still steers the engine roughly live.
 */
export interface WindowedEmitter<T> {
  push(value: T): void;
  /** Emit a held value now instead of at the window boundary. */
  flush(): void;
  cancel(): void;
  readonly pending: boolean;
}

export function windowedEmitter<T>(
  emit: (value: T) => void,
  windowMs = 150,
): WindowedEmitter<T> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let held: T;

  const fire = () => {
    timer = null;
    emit(held);
  };

  return {
    push(value: T) {
      held = value;
      if (timer === null) {
        timer = setTimeout(fire, windowMs);
      }
    },
    flush() {
      if (timer !== null) {
        clearTimeout(timer);
        fire();
      }
    },
    cancel() {
      if (timer !== null) {
        clearTimeout(timer);
        timer = null;
      }
    },
    get pending() {
      return timer !== null;
    },
  };
}
