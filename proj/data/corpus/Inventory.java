package corpus.shop;

import java.util.HashMap;
import java.util.Map;
import java.util.Optional;

public class Inventory {
    private final Map<String, Integer> stock = new HashMap<>();
    private final Map<String, Double> prices = new HashMap<>();
    private int lowStockThreshold = 5;

    public void addItem(String sku, int quantity, double price) {
        if (quantity < 0 || price < 0) {
            throw new IllegalArgumentException("quantity and price must be >= 0");
        }
        stock.merge(sku, quantity, Integer::sum);
        prices.put(sku, price);
    }

    public boolean remove(String sku, int quantity) {
        Integer current = stock.get(sku);
        if (current == null || current < quantity) {
            return false;
        }
        if (current == quantity) {
            stock.remove(sku);
        } else {
            stock.put(sku, current - quantity);
        }
        return true;
    }

    public double totalValue() {
        double total = 0;
        for (Map.Entry<String, Integer> e : stock.entrySet()) {
            double price = prices.getOrDefault(e.getKey(), 0.0);
            total += price * e.getValue();
        }
        return total;
    }

    public Optional<String> mostValuable() {
        String best = null;
        double bestValue = -1;
        for (String sku : stock.keySet()) {
            double value = prices.get(sku) * stock.get(sku);
            if (value > bestValue) {
                bestValue = value;
                best = sku;
            }
        }
        return Optional.ofNullable(best);
    }

    public int countLowStock() {
        int low = 0;
        for (int qty : stock.values()) {
            if (qty < lowStockThreshold) {
                low++;
            }
        }
        return low;
    }

    public void applyDiscount(String sku, double percent) {
        if (percent <= 0 || percent >= 100) {
            throw new IllegalArgumentException("percent out of range: " + percent);
        }
        Double price = prices.get(sku);
        if (price != null) {
            prices.put(sku, price * (1 - percent / 100.0));
        }
    }

    public String report() {
        StringBuilder sb = new StringBuilder("SKU\tQTY\tPRICE\n");
        stock.keySet().stream().sorted().forEach(sku -> {
            sb.append(sku).append('\t');
            sb.append(stock.get(sku)).append('\t');
            sb.append(prices.get(sku)).append('\n');
        });
        return sb.toString();
    }

    public void setLowStockThreshold(int threshold) {
        if (threshold < 0) {
            throw new IllegalArgumentException("threshold");
        }
        this.lowStockThreshold = threshold;
    }
}
