package corpus.graph;

import java.util.*;

public class Graph {
    private final Map<Integer, List<Integer>> adjacency = new HashMap<>();

    public void addEdge(int from, int to) {
        adjacency.computeIfAbsent(from, k -> new ArrayList<>()).add(to);
        adjacency.computeIfAbsent(to, k -> new ArrayList<>());
    }

    public List<Integer> breadthFirst(int start) {
        List<Integer> order = new ArrayList<>();
        Set<Integer> seen = new HashSet<>();
        Deque<Integer> queue = new ArrayDeque<>();
        queue.add(start);
        seen.add(start);
        while (!queue.isEmpty()) {
            int node = queue.poll();
            order.add(node);
            for (int next : adjacency.getOrDefault(node, Collections.emptyList())) {
                if (seen.add(next)) {
                    queue.add(next);
                }
            }
        }
        return order;
    }

    public boolean hasPath(int source, int target) {
        Deque<Integer> stack = new ArrayDeque<>();
        Set<Integer> visited = new HashSet<>();
        stack.push(source);
        while (!stack.isEmpty()) {
            int current = stack.pop();
            if (current == target) {
                return true;
            }
            if (!visited.add(current)) {
                continue;
            }
            for (int n : adjacency.getOrDefault(current, List.of())) {
                stack.push(n);
            }
        }
        return false;
    }

    public Map<Integer, Integer> inDegrees() {
        Map<Integer, Integer> degrees = new TreeMap<>();
        for (Integer v : adjacency.keySet()) {
            degrees.putIfAbsent(v, 0);
            for (Integer w : adjacency.get(v)) {
                degrees.merge(w, 1, Integer::sum);
            }
        }
        return degrees;
    }

    public List<Integer> topologicalOrder() {
        Map<Integer, Integer> indeg = inDegrees();
        Deque<Integer> ready = new ArrayDeque<>();
        for (Map.Entry<Integer, Integer> e : indeg.entrySet()) {
            if (e.getValue() == 0) ready.add(e.getKey());
        }
        List<Integer> result = new ArrayList<>();
        while (!ready.isEmpty()) {
            int v = ready.poll();
            result.add(v);
            for (int w : adjacency.get(v)) {
                if (indeg.merge(w, -1, Integer::sum) == 0) {
                    ready.add(w);
                }
            }
        }
        if (result.size() != indeg.size()) {
            throw new IllegalStateException("graph has a cycle");
        }
        return result;
    }

    public int edgeCount() {
        int total = 0;
        for (List<Integer> targets : adjacency.values()) {
            total += targets.size();
        }
        return total;
    }

    public Map<Integer, Integer> shortestHops(int origin) {
        Map<Integer, Integer> dist = new HashMap<>();
        Deque<Integer> frontier = new ArrayDeque<>();
        dist.put(origin, 0);
        frontier.add(origin);
        while (!frontier.isEmpty()) {
            int u = frontier.removeFirst();
            for (int v : adjacency.getOrDefault(u, List.of())) {
                if (!dist.containsKey(v)) {
                    dist.put(v, dist.get(u) + 1);
                    frontier.addLast(v);
                }
            }
        }
        return dist;
    }

    public void removeVertex(int vertex) {
        adjacency.remove(vertex);
        for (List<Integer> targets : adjacency.values()) {
            targets.removeIf(t -> t == vertex);
        }
    }
}
