package corpus.sched;

import java.util.ArrayList;
import java.util.Comparator;
import java.util.List;
import java.util.PriorityQueue;

public class TaskScheduler {
    public static class Task {
        final String name;
        final int priority;
        final long deadline;
        boolean done;

        Task(String name, int priority, long deadline) {
            this.name = name;
            this.priority = priority;
            this.deadline = deadline;
        }
    }

    private final PriorityQueue<Task> queue = new PriorityQueue<>(
            Comparator.comparingInt((Task t) -> -t.priority).thenComparingLong(t -> t.deadline));
    private final List<Task> finished = new ArrayList<>();
    private long clock = 0;

    public void submit(String name, int priority, long deadline) {
        if (name == null || name.isBlank()) {
            throw new IllegalArgumentException("task needs a name");
        }
        if (deadline < clock) {
            System.out.println("warning: deadline already passed for " + name);
        }
        queue.add(new Task(name, priority, deadline));
    }

    public Task runNext(long duration) {
        Task next = queue.poll();
        if (next == null) {
            return null;
        }
        clock += duration;
        next.done = true;
        finished.add(next);
        return next;
    }

    public int runAll(long perTask) {
        int late = 0;
        while (!queue.isEmpty()) {
            Task t = runNext(perTask);
            if (clock > t.deadline) {
                late++;
            }
        }
        return late;
    }

    public List<String> overdue() {
        List<String> names = new ArrayList<>();
        for (Task t : queue) {
            if (t.deadline < clock) {
                names.add(t.name);
            }
        }
        names.sort(null);
        return names;
    }

    public boolean cancel(String name) {
        Task found = null;
        for (Task t : queue) {
            if (t.name.equals(name)) {
                found = t;
                break;
            }
        }
        return found != null && queue.remove(found);
    }

    public double averagePriority() {
        if (finished.isEmpty()) {
            return 0;
        }
        int sum = 0;
        for (Task t : finished) sum += t.priority;
        return sum / (double) finished.size();
    }

    public void advance(long ticks) {
        if (ticks < 0) {
            throw new IllegalArgumentException("time runs forward");
        }
        clock = clock + ticks;
    }
}
