package shop.catalog;

import java.util.ArrayList;
import java.util.HashMap;
import java.util.List;
import java.util.Map;

public class Catalog {
    private static final int PAGE_SIZE = 20;
    private final Map<String, Product> products = new HashMap<>();
    private final List<String> order = new ArrayList<>();
    private int version;

    public static class Product {
        final String code;
        final String title;
        double price;
        int stock;

        Product(String code, String title, double price, int stock) {
            this.code = code;
            this.title = title;
            this.price = price;
            this.stock = stock;
        }

        double inventoryValue() {
            return price * stock;
        }
    }

    public boolean add(Product product) {
        // codes are unique within a catalog
        if (products.containsKey(product.code) || product.price < 0) {
            return false;
        }
        products.put(product.code, product);
        order.add(product.code);
        version += 1;
        return true;
    }

    public Product find(String code) {
        Product found = products.get(code);
        if (found == null) {
            throw new IllegalArgumentException("unknown product " + code);
        }
        return found;
    }

    public List<Product> page(int number) {
        List<Product> out = new ArrayList<>();
        int start = number * PAGE_SIZE;
        int end = Math.min(start + PAGE_SIZE, order.size());
        for (int i = start; i < end; i++) {
            out.add(products.get(order.get(i)));
        }
        return out;
    }

    public int pages() {
        if (order.isEmpty()) {
            return 0;
        }
        return (order.size() + PAGE_SIZE - 1) / PAGE_SIZE;
    }

    public double totalValue() {
        double total = 0;
        for (Product p : products.values()) {
            total += p.inventoryValue();
        }
        return total;
    }

    public int applyDiscount(double percent) {
        int changed = 0;
        for (Product p : products.values()) {
            if (p.stock > 10 && percent > 0) {
                p.price = p.price - p.price * percent / 100;
                changed++;
            }
        }
        version += 1;
        return changed;
    }

    public boolean sell(String code, int quantity) {
        Product p = find(code);
        if (quantity <= 0 || p.stock < quantity) {
            return false;
        }
        p.stock -= quantity;
        return true;
    }

    public int getVersion() {
        return version;
    }
}
