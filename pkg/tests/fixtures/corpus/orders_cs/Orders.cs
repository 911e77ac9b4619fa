using System;
using System.Collections.Generic;
using System.Linq;

namespace Shop.Orders
{
    public enum Status { Open, Paid, Shipped, Cancelled }

    public class OrderLine
    {
        public string Sku { get; set; }
        public int Quantity { get; set; }
        public decimal Price { get; set; }

        public decimal Total()
        {
            return Quantity * Price;
        }
    }

    public class Order
    {
        private const int MaxLines = 50;
        private readonly List<OrderLine> lines = new List<OrderLine>();
        public Status State { get; private set; } = Status.Open;
        public string Customer { get; }

        public Order(string customer)
        {
            Customer = customer;
        }

        public bool AddLine(string sku, int quantity, decimal price)
        {
            // only open orders accept new lines
            if (State != Status.Open || lines.Count >= MaxLines)
            {
                return false;
            }
            lines.Add(new OrderLine { Sku = sku, Quantity = quantity, Price = price });
            return true;
        }

        public decimal Subtotal()
        {
            decimal total = 0;
            foreach (var line in lines)
            {
                total += line.Total();
            }
            return total;
        }

        public decimal Shipping()
        {
            var weight = lines.Sum(l => l.Quantity);
            if (weight == 0)
            {
                return 0;
            }
            return 5 + weight * 0.5m;
        }

        public void Pay(decimal amount)
        {
            if (amount < Subtotal() && State == Status.Open)
            {
                throw new InvalidOperationException("insufficient payment");
            }
            State = Status.Paid;
        }

        public bool Cancel()
        {
            if (State == Status.Shipped)
            {
                return false;
            }
            State = Status.Cancelled;
            return true;
        }

        public int Units()
        {
            int count = 0;
            for (int i = 0; i < lines.Count; i++)
            {
                count += lines[i].Quantity;
            }
            return count;
        }

        public decimal AverageLine()
        {
            if (lines.Count == 0)
            {
                return 0;
            }
            return Subtotal() / lines.Count;
        }
    }
}
