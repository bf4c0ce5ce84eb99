/**
 * Polling loop via recursive setTimeout so a slow request never overlaps
 * the next tick. Returns a stop function.
 */
export function startPolling(
  task: () => Promise<void>,
  intervalMs: number,
): () => void {
  let stopped = false;
  let timer: ReturnType<typeof setTimeout> | undefined;

  const runLoop = () => {
    task()
      .catch(() => {
        /* surfaced by the task itself */
      })
      .finally(() => {
        if (!stopped) {
          timer = setTimeout(runLoop, intervalMs);
        }
      });
  };
  timer = setTimeout(runLoop, intervalMs);

  return () => {
    stopped = true;
    if (timer !== undefined) {
      clearTimeout(timer);
    }
  };
}
