/**
 * Single-inference worker queue: one queue per model serializes its
 * inference calls so a non-reentrant backend never runs concurrently,
 * while different models still run independently of each other.
 */
export class InferenceQueue {
  private tail: Promise<unknown> = Promise.resolve();

  run<T>(task: () => T | Promise<T>): Promise<T> {
    const next = this.tail.then(task);
    this.tail = next.then(
      () => undefined,
      () => undefined,
    );
    return next;
  }
}
